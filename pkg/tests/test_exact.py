from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ratdiag.errors import CompositionAtNonzeroPoint, NonRationalRoot, ZeroDerivative
from ratdiag.exact import (
    Q,
    RatFn,
    TruncatedSeries,
    UniPoly,
    rational_power,
    rational_root,
    schwarzian,
    series_compose,
    series_pow_rational,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
coeff_lists = st.lists(small, min_size=1, max_size=6)


def series_of(cs, order=10):
    return TruncatedSeries(cs, order)


def test_q_parses_strings_and_ints():
    assert Q("3/4") == Fraction(3, 4)
    assert Q(5) == Fraction(5)
    assert Q(Fraction(-1, 2)) == Fraction(-1, 2)


def test_rational_root_and_branch():
    assert rational_root(Fraction(16, 81), 4) == Fraction(2, 3)
    with pytest.raises(NonRationalRoot):
        rational_root(Fraction(2), 2)
    # root picks the branch: (a^4)^(1/4) = a even for negative a
    assert rational_power(Fraction(16), Fraction(1, 4), Fraction(-2)) == -2
    assert rational_power(Fraction(16), Fraction(-1, 4)) == Fraction(1, 2)


def test_unipoly_arithmetic_and_division():
    p = UniPoly([1, 2, 1])
    q = UniPoly([1, 1])
    assert p.exact_div(q) == q
    quo, rem = UniPoly([1, 0, 0, 1]).divmod(q)
    assert rem.is_zero() and quo == UniPoly([1, -1, 1])
    assert p.degree == 2
    assert p.compose(UniPoly([0, 2])) == UniPoly([1, 4, 4])
    assert p.gcd(UniPoly([-1, 0, 1])) == UniPoly([1, 1])


def test_ratfn_normalized_cancels_common_factor():
    x = RatFn.of(UniPoly.x())
    f = (x**3 * (x - 1)) / (x**5 * (x + 2))
    g = f.normalized()
    assert g == f
    assert g.den == UniPoly([0, 0, 2, 1])
    assert g.num == UniPoly([-1, 1])


def test_series_inverse_and_product():
    s = series_of([1, 1])  # 1 + x
    inv = s.inverse()
    assert inv.coefficients(6) == [1, -1, 1, -1, 1, -1]
    assert (s * inv) == TruncatedSeries.constant(1, 10)


def test_laurent_inverse_keeps_pole():
    s = TruncatedSeries([0, 0, 1, 1], 10)  # x^2 + x^3
    inv = s.inverse()
    assert inv.pole_order == 2
    assert inv[-2] == 1 and inv[-1] == -1


def test_compose_requires_vanishing_inner():
    with pytest.raises(CompositionAtNonzeroPoint):
        series_compose(series_of([1, 1]), series_of([1, 1]))


def test_schwarzian_of_mobius_is_zero():
    x = RatFn.of(UniPoly.x())
    m = ((2 * x + 1) / (3 - x)).to_series(12)
    assert schwarzian(m).valuation() >= schwarzian(m).order


def test_schwarzian_of_constant_raises():
    with pytest.raises(ZeroDerivative):
        schwarzian(TruncatedSeries.constant(3, 8))


def test_schwarzian_of_square():
    # {x^2, x} = -3/(2 x^2)
    s = schwarzian(TruncatedSeries([0, 0, 1], 12))
    assert s[-2] == Fraction(-3, 2)
    assert all(s[e] == 0 for e in range(-1, s.order))


@settings(max_examples=60, deadline=None)
@given(coeff_lists, coeff_lists)
def test_mul_is_commutative(a, b):
    sa, sb = series_of(a), series_of(b)
    assert sa * sb == sb * sa


@settings(max_examples=60, deadline=None)
@given(coeff_lists.filter(lambda cs: cs[0] != 0))
def test_inverse_roundtrip(cs):
    s = series_of(cs)
    assert s * s.inverse() == TruncatedSeries.constant(1, 10)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.fractions(min_value=-3, max_value=3, max_denominator=6))
def test_power_recurrence_matches_binomial_sum(tail, alpha):
    # s = 1 + u with u(0) = 0: (1+u)^alpha = sum binom(alpha, k) u^k
    n = 8
    u = TruncatedSeries([0] + tail, n)
    s = 1 + u
    got = series_pow_rational(s, alpha)
    acc = TruncatedSeries.constant(0, n)
    term = TruncatedSeries.constant(1, n)
    binom = Fraction(1)
    for k in range(n):
        acc = acc + term * binom
        term = term * u
        binom = binom * (alpha - k) / (k + 1)
    assert got == acc


@settings(max_examples=40, deadline=None)
@given(coeff_lists, st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=4))
def test_composition_is_associative(a, b, c):
    n = 8
    f = series_of(a, n)
    g = TruncatedSeries([0] + b, n)
    h = TruncatedSeries([0] + c, n)
    assert series_compose(series_compose(f, g), h) == series_compose(f, series_compose(g, h))


@settings(max_examples=40, deadline=None)
@given(coeff_lists, coeff_lists.filter(lambda cs: any(cs)))
def test_ratfn_normalized_is_equal(num, den):
    f = RatFn(UniPoly(num) * UniPoly([0, 1]) ** 2, UniPoly(den) * UniPoly([0, 1]) ** 3)
    g = f.normalized()
    assert g == f
    assert g.num.gcd(g.den) == UniPoly([1])


def test_binomial_reference():
    # (1 - 4x)^(-1/2) = sum binom(2k, k) x^k
    s = series_pow_rational(TruncatedSeries([1, -4], 12), Fraction(-1, 2))
    assert s.coefficients(12) == [comb(2 * k, k) for k in range(12)]
