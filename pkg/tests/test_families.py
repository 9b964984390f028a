import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ratdiag.errors import WrongFamilyShape
from ratdiag.exact import UniPoly, series_pow_rational
from ratdiag.families import (
    FamilyParams,
    closed_form,
    closed_form_seven,
    degenerate_forms,
    evaluate_closed_form,
    evaluate_closed_form_712,
    p2_seven,
    p4_seven,
    p5_seven,
    p_pair_nine,
    p_pair_ten,
    q0_seven,
    q1_seven,
    random_family_params,
    simple_three_pair,
    symmetric_p2_p4,
    symmetric_subcase_forms,
    symmetric_ten_form,
    symmetric_ten_pair,
)
from ratdiag.oracle import diagonal
from ratdiag.tripoly import RationalFn3, parse_tripoly

frac = st.fractions(min_value=-4, max_value=4, max_denominator=4)
nonzero = frac.filter(lambda v: v != 0)


def test_seven_parameter_regression():
    p = FamilyParams.seven(1, 1, 1, 1, 5, 7, 3)
    assert p2_seven(p) == UniPoly([1, -96, 2712])
    assert p4_seven(p) == UniPoly([1, -144, 7524, -181440, 2381400])


def test_wrong_shapes_rejected():
    with pytest.raises(WrongFamilyShape):
        FamilyParams.from_list("7", [1, 2, 3])
    with pytest.raises(WrongFamilyShape):
        FamilyParams.seven(0, 1, 1, 1, 1, 1, 1)
    with pytest.raises(WrongFamilyShape):
        p2_seven(FamilyParams.from_list("8", [1] * 8))
    with pytest.raises(WrongFamilyShape):
        FamilyParams(1, 1, 1, 1, 1, 1, 1, e=2)


@pytest.mark.parametrize("family", ["7", "8", "9", "10", "9d3"])
def test_closed_form_matches_oracle(family):
    rng = random.Random(17)
    for _ in range(3):
        p = random_family_params(rng, family)
        cf = closed_form(p, family)
        assert evaluate_closed_form(cf, 14) == diagonal(p.rational_function(), 14)


@settings(max_examples=15, deadline=None)
@given(nonzero, frac, frac, frac, frac, frac, frac)
def test_seven_parameter_property(a, b1, b2, b3, c1, c2, c3):
    p = FamilyParams.seven(a, b1, b2, b3, c1, c2, c3)
    assert evaluate_closed_form(closed_form_seven(p), 10) == diagonal(p.rational_function(), 10)


@settings(max_examples=25, deadline=None)
@given(nonzero, frac, frac, frac, frac, frac, frac)
def test_p5_low_coefficients(a, b1, b2, b3, c1, c2, c3):
    p = FamilyParams.seven(a, b1, b2, b3, c1, c2, c3)
    p5 = p5_seven(p)
    assert p5[0] == q0_seven(p)
    assert p5[1] == q1_seven(p)
    assert p5.degree <= 5


def test_homogeneity_degrees():
    p = FamilyParams.seven(2, 1, -1, 3, Fraction(1, 2), 2, 1)
    lam = Fraction(3)
    q = p.scaled(lam)
    assert p2_seven(q) == p2_seven(p).scale(lam**4)
    assert p4_seven(q) == p4_seven(p).scale(lam**6)


@pytest.mark.parametrize("abc", [(1, 1, 1), (2, -1, 3), (Fraction(1, 2), 3, -2)])
def test_symmetric_subcase(abc):
    a, b, c = abc
    p = FamilyParams(a, b, b, b, c, c, c)
    assert symmetric_p2_p4(a, b, c) == (p2_seven(p), p4_seven(p), p5_seven(p))
    first, second = symmetric_subcase_forms(a, b, c, 30)
    assert first == second


@pytest.mark.parametrize("vals", [(2, 0, 3, -1, 1, Fraction(1, 2), 0),
                                  (3, 2, -1, 5, Fraction(-5, 3), Fraction(10, 3), 0)])
def test_degenerate_subcases(vals):
    p = FamilyParams.seven(*vals)
    assert p5_seven(p).is_zero()
    forms = degenerate_forms(p, 20)
    assert forms
    d = diagonal(p.rational_function(), 20)
    assert all(s == d for s in forms.values())
    # with P5 = 0 the closed form collapses to P2^(-1/4) = P4^(-1/6)
    pre = series_pow_rational(p2_seven(p).to_series(20), Fraction(-1, 4), p.a)
    assert evaluate_closed_form(closed_form_seven(p), 20) == pre
    assert pre == series_pow_rational(p4_seven(p).to_series(20), Fraction(-1, 6), p.a)


def test_printed_ratfonctriv2_carries_extra_factor():
    a, b1, b2, b3 = 2, 3, 5, 7
    printed = RationalFn3.inverse_of(parse_tripoly(
        f"{a*a} + {a*b1}*x + {a*b2}*y + {a*b3}*z + {b2*b3}*y*z + {b1*b3}*x*z"))
    member = FamilyParams.seven(a, b1, b2, b3, Fraction(b2 * b3, a), Fraction(b1 * b3, a), 0)
    form = degenerate_forms(member, 8)["c3=0,c1=b2b3/a,c2=b1b3/a"]
    assert diagonal(printed, 8) == form / a
    assert diagonal(member.rational_function(), 8) == form


def test_extensions_reduce_to_seven():
    rng = random.Random(3)
    p = random_family_params(rng, "7")
    base = closed_form_seven(p)
    v = p.values()
    for family, extra in [("8", [0]), ("9", [0, 0]), ("10", [0, 0, 0]), ("9d3", [0, 0])]:
        assert closed_form(FamilyParams.from_list(family, v + extra), family) == base


def test_d3_slice_agrees_with_ten():
    rng = random.Random(5)
    for _ in range(5):
        q = random_family_params(rng, "9d3")
        assert closed_form(q, "9d3") == closed_form(q, "10")


def test_d_e_symmetry():
    rng = random.Random(7)
    for _ in range(5):
        p = random_family_params(rng, "9")
        swapped = FamilyParams(p.a, p.b3, p.b2, p.b1, p.c3, p.c2, p.c1, d=p.e, e=p.d)
        assert p_pair_nine(p) == p_pair_nine(swapped)


def test_simple_three_and_symmetric_ten():
    cf = p_pair_ten(FamilyParams(2, 0, 0, 0, 0, 0, 0, d1=1, d2=-2, d3=3))
    assert (cf.prefactor_base, cf.pullback_num) == simple_three_pair(2, 1, -2, 3)
    for a, b, c, d in [(1, 1, 1, 1), (2, -1, Fraction(1, 2), 3)]:
        p = FamilyParams(a, b, b, b, c, c, c, d1=d, d2=d, d3=d)
        cf = p_pair_ten(p)
        assert (cf.prefactor_base, cf.pullback_num) == symmetric_ten_pair(a, b, c, d)
        assert symmetric_ten_form(a, b, c, d, 20) == evaluate_closed_form(cf, 20)


def test_712_view_is_the_same_function():
    rng = random.Random(11)
    for _ in range(3):
        cf = closed_form_seven(random_family_params(rng, "7"))
        assert evaluate_closed_form(cf, 20) == evaluate_closed_form_712(cf, 20)
