from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ratdiag.errors import ExpansionAtPole, InexactDivision, ParseError
from ratdiag.oracle import diagonal, multi_taylor, multi_taylor_geometric
from ratdiag.tripoly import RationalFn3, TriPoly, format_tripoly, parse_tripoly

coef = st.integers(min_value=-4, max_value=4)
exps = st.tuples(*(st.integers(min_value=0, max_value=2),) * 3)
polys = st.dictionaries(exps, coef, max_size=5).map(lambda d: TriPoly(d))


def test_parser_basics():
    p = parse_tripoly("1 - x - y - z + y*z")
    assert p.terms == {(0, 0, 0): 1, (1, 0, 0): -1, (0, 1, 0): -1, (0, 0, 1): -1, (0, 1, 1): 1}
    assert parse_tripoly("3/2*x^2*y") == TriPoly({(2, 1, 0): Fraction(3, 2)})
    assert parse_tripoly("(1+x)^2") == parse_tripoly("1 + 2*x + x^2")
    assert parse_tripoly(" - ( x - y ) ") == parse_tripoly("y-x")


@pytest.mark.parametrize("bad", ["", "x/y", "x^", "1+", "(x", "w", "x^-1", "1/0"])
def test_parser_rejects(bad):
    with pytest.raises(ParseError):
        parse_tripoly(bad)


@settings(max_examples=80, deadline=None)
@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_tripoly(format_tripoly(p)) == p


@settings(max_examples=40, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_exact_div_of_product(a, b):
    assert (a * b).exact_div(b) == a


def test_exact_div_rejects_remainder():
    with pytest.raises(InexactDivision):
        parse_tripoly("x^2 + y").exact_div(parse_tripoly("x"))


def test_pole_at_origin_rejected():
    with pytest.raises(ExpansionAtPole):
        RationalFn3.inverse_of(parse_tripoly("x + y"))


def test_known_diagonals():
    # 1/(1-x-y-z+yz): sum binom(2n, n)^2
    f = RationalFn3.inverse_of(parse_tripoly("1-x-y-z+y*z"))
    assert diagonal(f, 6).coefficients() == [comb(2 * n, n) ** 2 for n in range(6)]
    # 1/(1-x-y-z): multinomial (3n)!/(n!)^3
    g = RationalFn3.inverse_of(parse_tripoly("1-x-y-z"))
    assert diagonal(g, 5).coefficients() == [1, 6, 90, 1680, 34650]


def test_numerator_shifts_diagonal():
    f = RationalFn3(parse_tripoly("x*y*z"), parse_tripoly("1-x-y-z+y*z"))
    assert diagonal(f, 4).coefficients() == [0, 1, 4, 36]


@settings(max_examples=25, deadline=None)
@given(polys, st.integers(min_value=1, max_value=4))
def test_recurrence_matches_geometric_route(tail, a0):
    den = tail + TriPoly.const(a0) - TriPoly.const(tail.constant_term())
    f = RationalFn3(parse_tripoly("1 + x*y"), den)
    assert multi_taylor(f, 3) == multi_taylor_geometric(f, 3)


@settings(max_examples=25, deadline=None)
@given(polys, st.integers(min_value=1, max_value=3))
def test_series_times_denominator_is_numerator(tail, a0):
    den = tail + TriPoly.const(a0) - TriPoly.const(tail.constant_term())
    T = multi_taylor(RationalFn3.inverse_of(den), 3)
    prod: dict = {}
    for e, c in T.terms.items():
        for d, v in den.terms.items():
            k = tuple(u + w for u, w in zip(e, d))
            if max(k) <= 3:
                prod[k] = prod.get(k, 0) + c * v
    assert {k: v for k, v in prod.items() if v} == {(0, 0, 0): 1}
