import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ratdiag.errors import ExpansionAtPole, InvalidMonomialMap
from ratdiag.exact import RatFn, TruncatedSeries, UniPoly, series_compose
from ratdiag.families import FamilyParams, closed_form, random_family_params
from ratdiag.hyp2f1 import H, gauss_series
from ratdiag.oracle import diagonal, multi_taylor
from ratdiag.symmetry import (
    MonomialMap,
    RescaleFn,
    apply_monomial,
    apply_rescaling,
    monomial_diagonal_law,
    random_monomial_map,
    random_rescale_fn,
    rescaling_diagonal_law,
    substitute_power,
    verify_param_scaling,
    weighted_params,
)
from ratdiag.tripoly import RationalFn3, parse_tripoly

BASE = RationalFn3.inverse_of(parse_tripoly("1 + x + y + z + 3*x*y + 5*y*z + 7*x*z"))
SYM = RationalFn3.inverse_of(parse_tripoly("1 + x + y + z + 3*(x*y + y*z + x*z)"))


def test_monomialex_image_and_diagonal():
    m = MonomialMap(((0, 0, 1), (2, 1, 0), (0, 1, 1)))
    assert m.n == 2
    img = apply_monomial(SYM, m)
    assert img.denominator == parse_tripoly("1 + z + x^2*y + y*z + 3*(y*z^2 + x^2*y*z + x^2*y^2*z)")
    x = RatFn.of(UniPoly.x())
    expected = series_compose(gauss_series(H(Fraction(1, 3), Fraction(2, 3)), 16),
                              (27 * x**2 * (2 - 27 * x**2)).to_series(16))
    assert diagonal(img, 16) == expected
    assert monomial_diagonal_law(SYM, m, 16).holds


def test_monomialexmm_computed_image_obeys_law():
    m = MonomialMap(((1, 0, 1), (2, 1, 0), (0, 2, 2)))
    assert m.n == 3
    img = apply_monomial(BASE, m)
    assert img.denominator == parse_tripoly(
        "1 + x*z + x^2*y + y^2*z^2 + 3*x^3*y*z + 5*x^2*y^3*z^2 + 7*x*y^2*z^3")
    rep = monomial_diagonal_law(BASE, m, 13)
    assert rep.holds
    phi = diagonal(BASE, 5)
    assert diagonal(img, 13) == substitute_power(phi, 3, 13)


def test_monomialexmm_printed_display_breaks_law():
    printed = RationalFn3.inverse_of(parse_tripoly(
        "1 + x*z + x^2*y + y^2*z^2 + 3*x^2*y^3 + 5*x*y^2*z^3 + 7*x^3*y*z"))
    d = diagonal(printed, 7)
    assert d.coefficients()[:4] == [1, 0, 0, 18]
    assert d != substitute_power(diagonal(BASE, 3), 3, 7)


@pytest.mark.parametrize("rows", [
    ((1, 0, 0), (1, 0, 0), (0, 1, 1)),      # singular
    ((1, 0, 0), (0, 2, 0), (0, 0, 1)),      # unequal column sums
    ((1, 1, 1), (1, 0, 0), (0, 1, 1)),      # image of x is xyz
    ((2, -1, 0), (0, 2, 1), (0, 0, 1)),     # negative entry
    ((1, 0), (0, 1), (0, 0)),               # wrong shape
])
def test_invalid_maps_rejected(rows):
    with pytest.raises(InvalidMonomialMap):
        MonomialMap(rows)


def test_flat_roundtrip_and_length():
    m = MonomialMap.from_flat([0, 0, 1, 2, 1, 0, 0, 1, 1])
    assert MonomialMap.from_flat(m.flat()) == m
    with pytest.raises(InvalidMonomialMap):
        MonomialMap.from_flat([1, 0, 0])


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_map_obeys_law(seed):
    m = random_monomial_map(random.Random(seed), max_entry=2)
    assert monomial_diagonal_law(BASE, m, 2 * m.n + 1).holds


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=0, max_value=10**6))
def test_maps_compose(s1, s2):
    m1 = random_monomial_map(random.Random(s1), 2)
    m2 = random_monomial_map(random.Random(s2), 2)
    m = m1.then(m2)
    assert m.n == m1.n * m2.n
    assert m.determinant() == m1.determinant() * m2.determinant()
    twice = apply_monomial(apply_monomial(BASE, m1), m2)
    once = apply_monomial(BASE, m)
    assert once.denominator == twice.denominator and once.numerator == twice.numerator


def test_identity_rescaling_is_trivial():
    one = RescaleFn.of([1])
    assert apply_rescaling(BASE, one, 5) == multi_taylor(BASE, 5)
    assert rescaling_diagonal_law(BASE, one, 10).holds


def test_rescaling_examples():
    for F in [RescaleFn.of([1, 1]), RescaleFn.of([1], [1, -2]), RescaleFn.of([2, 0, 3], [1, 1])]:
        assert rescaling_diagonal_law(BASE, F, 10).holds, F.describe()


def test_rescale_fn_rejects_zero_at_origin():
    with pytest.raises(ExpansionAtPole):
        RescaleFn.of([0, 1])
    with pytest.raises(ExpansionAtPole):
        RescaleFn.of([1], [0, 1])


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_rescaling_obeys_law(seed):
    F = random_rescale_fn(random.Random(seed))
    assert rescaling_diagonal_law(SYM, F, 8).holds


def test_rescaling_that_ignores_the_law_fails():
    # a non-product rescaling (only x is multiplied) must not satisfy Phi(x F^3)
    F = RescaleFn.of([1, 1])
    lhs = diagonal(RationalFn3.inverse_of(parse_tripoly("1 + x + x^2*y*z + y + z + 3*x*y + 5*y*z + 7*x*z")), 8)
    inner = TruncatedSeries.variable(8) * F.series(8) ** 3
    assert lhs != series_compose(diagonal(BASE, 8), inner)


def test_seven_parameter_overall_scaling():
    p = FamilyParams.seven(1, 1, 1, 1, 5, 7, 3)
    rep = verify_param_scaling(p, (3, 1, 1, 1), 20)
    assert rep.holds, rep.to_json()


@pytest.mark.parametrize("family", ["7", "8", "9", "10", "9d3"])
def test_weighted_scaling_per_family(family):
    rng = random.Random(23)
    p = random_family_params(rng, family)
    rep = verify_param_scaling(p, (2, Fraction(1, 2), 3, -1), 16)
    assert rep.holds, rep.to_json()
    assert verify_param_scaling(p, (1, 1, 1, 1), 16).holds


def test_weighted_scaling_matches_oracle():
    p = FamilyParams(2, 1, -1, 3, 1, 2, -2, d=1, e=3)
    q = weighted_params(p, 2, 3, 5)
    d_p = diagonal(p.rational_function(), 8)
    d_q = diagonal(q.rational_function(), 8)
    assert [c * 30**n for n, c in enumerate(d_p.coefficients())] == d_q.coefficients()


def test_wrong_weights_break_invariance():
    # scaling b1 alone is not a symmetry of the pullback
    p = FamilyParams.seven(1, 1, 1, 1, 5, 7, 3)
    q = FamilyParams.seven(1, 2, 1, 1, 5, 7, 3)
    pull = closed_form(p).pullback_series(12)
    pull_q = closed_form(q).pullback_series(12)
    rescaled = TruncatedSeries.from_exponents({e: pull_q[e] * Fraction(1, 2) ** e for e in range(12)}, 12)
    assert rescaled != pull
    with pytest.raises(ValueError):
        verify_param_scaling(p, (1, 0, 1, 1))


def test_rational_rescaling_example():
    # F = (1 + 2t)/(1 + 3t + 5t^2) applied to 1/(1 + x + y + z + xy + yz + xz)
    f = RationalFn3.inverse_of(parse_tripoly("1 + x + y + z + y*z + x*z + x*y"))
    F = RescaleFn.of([1, 2], [1, 3, 5])
    P = parse_tripoly("(1 + 3*x*y*z + 5*x^2*y^2*z^2)^2")
    Q = parse_tripoly(
        "25*x^4*y^4*z^4 + 10*(x^4*y^3*z^3 + x^3*y^4*z^3 + x^3*y^3*z^4) + 30*x^3*y^3*z^3"
        " + 4*(x^3*y^3*z^2 + x^3*y^2*z^3 + x^2*y^3*z^3) + 11*(x^3*y^2*z^2 + x^2*y^3*z^2 + x^2*y^2*z^3)"
        " + 19*x^2*y^2*z^2 + 4*(x^2*y^2*z + x^2*y*z^2 + x*y^2*z^2) + 5*(x^2*y*z + x*y^2*z + x*y*z^2)"
        " + 6*x*y*z + x*y + x*z + y*z + x + y + z + 1")
    g = RationalFn3(P, Q)
    assert apply_rescaling(f, F, 6) == multi_taylor(g, 6)
    x = RatFn.of(UniPoly.x())
    pull = -27 * x**2 * ((1 + 2 * x) / (1 + 3 * x + 5 * x**2)) ** 6
    expected = series_compose(gauss_series(H(Fraction(1, 3), Fraction(2, 3)), 12), pull.to_series(12))
    assert diagonal(g, 12) == expected
    assert rescaling_diagonal_law(f, F, 12).holds
