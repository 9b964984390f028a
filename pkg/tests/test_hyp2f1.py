from fractions import Fraction
from math import comb

import pytest

from ratdiag.errors import CompositionAtNonzeroPoint, UnknownIdentity
from ratdiag.exact import TruncatedSeries
from ratdiag.hyp2f1 import (
    CATALOG,
    H,
    X,
    catalog_ids,
    compare_sides,
    gauss_series,
    pullbacked_2f1,
    side,
    verify_identity,
)

F512 = H(Fraction(1, 12), Fraction(5, 12))


def test_gauss_series_central_binomials():
    # 2F1([1/2,1/2],[1],16x) = sum binom(2n,n)^2 x^n
    s = gauss_series(H(Fraction(1, 2), Fraction(1, 2)), 8)
    assert [c * 16**n for n, c in enumerate(s.coefficients())] == [comb(2 * n, n) ** 2 for n in range(8)]


def test_gauss_series_terminates_for_negative_integer():
    s = gauss_series(H(-2, 3, 1), 6)
    assert s.coefficients() == [1, -6, 6, 0, 0, 0]


def test_pullback_must_vanish():
    with pytest.raises(CompositionAtNonzeroPoint):
        pullbacked_2f1(F512, TruncatedSeries.constant(1, 5), TruncatedSeries([1, 1], 5), 5)


def test_catalog_size_and_unknown_id():
    assert len(catalog_ids()) >= 24
    with pytest.raises(UnknownIdentity):
        verify_identity("no-such-identity")


@pytest.mark.parametrize("tag", catalog_ids())
def test_catalog_entry_holds(tag):
    r = verify_identity(tag, 30)
    assert r.holds, r.to_json()
    assert r.order == 30


def test_identi_second_pullback_printed_exponent_fails():
    # the display carries (a^3 + 16 b^3 x)^4; at (a, b) = (1, 2) it is not an identity
    x = X
    b = 2
    lin = 1 + 16 * b**3 * x
    q1 = 16 * b**6 * x**2 + 16 * b**3 * x + 1
    q2 = 4096 * b**6 * x**2 + 256 * b**3 * x + 1
    lhs = side(F512, 1728 * b**12 * x**4 * lin / q1**3, (q1, Fraction(-1, 4)))
    printed = side(F512, 1728 * b**3 * x * lin**4 / q2**3, (q2, Fraction(-1, 4)))
    r = compare_sides("printed", lhs, printed, 30)
    assert not r.holds and r.first_mismatch == 2


def test_identi_third_prefactor_printed_reading_fails():
    # "256 b^6 x^2 - 224 a^3 x + a^6" without b^3 only works when b = 1
    x = X
    b = 2
    lin = 1 + 16 * b**3 * x
    q1 = 16 * b**6 * x**2 + 16 * b**3 * x + 1
    q3_printed = 256 * b**6 * x**2 - 224 * x + 1
    q3 = 256 * b**6 * x**2 - 224 * b**3 * x + 1
    lhs = side(F512, 1728 * b**12 * x**4 * lin / q1**3, (q1, Fraction(-1, 4)))
    pull = -1728 * b**3 * x * lin**4 / q3**3
    assert compare_sides("fixed", lhs, side(F512, pull, (q3, Fraction(-1, 4))), 20).holds
    assert not compare_sides("printed", lhs, side(F512, pull, (q3_printed, Fraction(-1, 4))), 20).holds


def test_reports_are_serializable():
    r = verify_identity("identity0", 10).to_json()
    assert r == {"id": "identity0", "holds": True, "order": 10}
    assert CATALOG["identi_12"].note
