"""Closed-form diagonals of the parameter families 1/(a + b.x + c.yz + ...).

The diagonal of each family is ``base**(-1/4) * 2F1([1/12,5/12],[1], 1 - num**2/den**3)``
for explicit polynomials (base, num, den) in x.  Family members are:

* seven parameters: a + b1 x + b2 y + b3 z + c1 yz + c2 xz + c3 xy
* eight: add d x^2 y
* nine: add d x^2 y + e y z^2
* ten: add d1 x^2 y + d2 y^2 z + d3 z^2 x (``9d3`` is the d3 = 0 slice)
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import NonRationalRoot, PullbackNotVanishing, WrongFamilyShape
from .exact import Q, Scalar, TruncatedSeries, UniPoly, series_compose, series_pow_rational
from .hyp2f1 import HypParams, gauss_series
from .tripoly import RationalFn3, TriPoly

F512 = HypParams(Fraction(1, 12), Fraction(5, 12), Fraction(1))
F712 = HypParams(Fraction(1, 12), Fraction(7, 12), Fraction(1))

SHAPES = ("none", "d", "de", "d123")


@dataclass(frozen=True)
class FamilyParams:
    a: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction
    d: Fraction | None = None
    e: Fraction | None = None
    d1: Fraction | None = None
    d2: Fraction | None = None
    d3: Fraction | None = None

    def __post_init__(self):
        for name in ("a", "b1", "b2", "b3", "c1", "c2", "c3", "d", "e", "d1", "d2", "d3"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, Q(v))
        if self.a == 0:
            raise WrongFamilyShape("a must be nonzero")
        self.shape  # validates the extension pattern

    @classmethod
    def seven(cls, a, b1, b2, b3, c1, c2, c3) -> "FamilyParams":
        return cls(a, b1, b2, b3, c1, c2, c3)

    @classmethod
    def from_list(cls, family: str, values) -> "FamilyParams":
        vals = [Q(v) for v in values]
        need = {"7": 7, "8": 8, "9": 9, "10": 10, "9d3": 9}[family]
        if len(vals) != need:
            raise WrongFamilyShape(f"family {family} takes {need} parameters, got {len(vals)}")
        base = vals[:7]
        if family == "7":
            return cls(*base)
        if family == "8":
            return cls(*base, d=vals[7])
        if family == "9":
            return cls(*base, d=vals[7], e=vals[8])
        if family == "10":
            return cls(*base, d1=vals[7], d2=vals[8], d3=vals[9])
        return cls(*base, d1=vals[7], d2=vals[8], d3=Fraction(0))

    @property
    def shape(self) -> str:
        has = tuple(getattr(self, n) is not None for n in ("d", "e", "d1", "d2", "d3"))
        table = {
            (False,) * 5: "none",
            (True, False, False, False, False): "d",
            (True, True, False, False, False): "de",
            (False, False, True, True, True): "d123",
        }
        if has not in table:
            raise WrongFamilyShape(f"inconsistent extension parameters {has}")
        return table[has]

    def base7(self) -> "FamilyParams":
        return FamilyParams(self.a, self.b1, self.b2, self.b3, self.c1, self.c2, self.c3)

    def scaled(self, lam: Scalar) -> "FamilyParams":
        lam = Q(lam)
        kw = {n: (None if getattr(self, n) is None else lam * getattr(self, n))
              for n in ("a", "b1", "b2", "b3", "c1", "c2", "c3", "d", "e", "d1", "d2", "d3")}
        return FamilyParams(**kw)

    def denominator(self) -> TriPoly:
        t = {
            (0, 0, 0): self.a, (1, 0, 0): self.b1, (0, 1, 0): self.b2, (0, 0, 1): self.b3,
            (0, 1, 1): self.c1, (1, 0, 1): self.c2, (1, 1, 0): self.c3,
        }
        ext = []
        if self.d is not None:
            ext.append(((2, 1, 0), self.d))
        if self.e is not None:
            ext.append(((0, 1, 2), self.e))
        if self.d1 is not None:
            ext += [((2, 1, 0), self.d1), ((0, 2, 1), self.d2), ((1, 0, 2), self.d3)]
        return TriPoly(list(t.items()) + ext)

    def rational_function(self) -> RationalFn3:
        return RationalFn3.inverse_of(self.denominator())

    def values(self) -> list[Fraction]:
        out = [self.a, self.b1, self.b2, self.b3, self.c1, self.c2, self.c3]
        return out + [getattr(self, n) for n in ("d", "e", "d1", "d2", "d3")
                      if getattr(self, n) is not None]


@dataclass(frozen=True)
class ClosedForm:
    """base**(-1/4) * 2F1([1/12,5/12],[1], 1 - num**2/den**3).

    ``root`` is the branch for the constant terms: base(0) = root**4 and
    num(0) = root**6 (it is the parameter a for every family).
    """

    prefactor_base: UniPoly
    pullback_num: UniPoly
    pullback_den: UniPoly
    root: Fraction

    def pullback_series(self, n_terms: int) -> TruncatedSeries:
        num, den = self.pullback_num, self.pullback_den
        if num[0] ** 2 != den[0] ** 3:
            raise PullbackNotVanishing("num(0)^2 != den(0)^3")
        top = num * num
        bottom = den * den * den
        s = top.to_series(n_terms) / bottom.to_series(n_terms)
        return 1 - s

    def to_json(self) -> dict:
        return {
            "base": self.prefactor_base.to_json(),
            "num": self.pullback_num.to_json(),
            "den": self.pullback_den.to_json(),
            "root": str(self.root),
        }


def _require(p: FamilyParams, shape: str):
    if p.shape != shape:
        raise WrongFamilyShape(f"expected extension shape {shape!r}, got {p.shape!r}")


def _poly(terms: dict[int, Fraction]) -> UniPoly:
    top = max(terms) if terms else -1
    return UniPoly(terms.get(k, 0) for k in range(top + 1))


# ---------------------------------------------------------- seven params


def _p2(p: FamilyParams) -> UniPoly:
    a, b1, b2, b3, c1, c2, c3 = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3
    s = b1 * c1 + b2 * c2 + b3 * c3
    x2 = 8 * (3 * a * c1 * c2 * c3 + 2 * (b1**2 * c1**2 + b2**2 * c2**2 + b3**2 * c3**2
                                          - b1 * b2 * c1 * c2 - b1 * b3 * c1 * c3 - b2 * b3 * c2 * c3))
    x1 = -8 * a * (a * s - 3 * b1 * b2 * b3)
    return _poly({0: a**4, 1: x1, 2: x2})


def _p4(p: FamilyParams) -> UniPoly:
    a, b1, b2, b3, c1, c2, c3 = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3
    s = b1 * c1 + b2 * c2 + b3 * c3
    mixed = (b1**2 * b2 * c1**2 * c2 + b1 * b2**2 * c1 * c2**2 + b1**2 * b3 * c1**2 * c3
             + b1 * b3**2 * c1 * c3**2 + b2**2 * b3 * c2**2 * c3 + b2 * b3**2 * c2 * c3**2)
    x4 = 216 * c1**2 * c2**2 * c3**2
    x3 = -16 * (9 * a * c1 * c2 * c3 * s - 6 * mixed
                + 4 * (b1**3 * c1**3 + b2**3 * c2**3 + b3**3 * c3**3)
                - 3 * b1 * b2 * b3 * c1 * c2 * c3)
    x2 = 12 * (3 * a**3 * c1 * c2 * c3
               + 4 * a**2 * (b1**2 * c1**2 + b2**2 * c2**2 + b3**2 * c3**2)
               + 2 * a**2 * (b1 * b2 * c1 * c2 + b1 * b3 * c1 * c3 + b2 * b3 * c2 * c3)
               - 12 * a * b1 * b2 * b3 * s + 18 * b1**2 * b2**2 * b3**2)
    x1 = -12 * a**3 * (a * s - 3 * b1 * b2 * b3)
    return _poly({0: a**6, 1: x1, 2: x2, 3: x3, 4: x4})


def p2_seven(p: FamilyParams) -> UniPoly:
    _require(p, "none")
    return _p2(p)


def p4_seven(p: FamilyParams) -> UniPoly:
    _require(p, "none")
    return _p4(p)


def p5_seven(p: FamilyParams) -> UniPoly:
    """(P4**2 - P2**3) / (1728 x**3), with both divisions checked exact."""
    _require(p, "none")
    p2, p4 = _p2(p), _p4(p)
    return (p4 * p4 - p2 * p2 * p2).div_xk(3).div_scalar(1728)


def q0_seven(p: FamilyParams) -> Fraction:
    a, b1, b2, b3, c1, c2, c3 = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3
    return -b1 * b2 * b3 * a**3 * (a * c1 - b2 * b3) * (a * c2 - b1 * b3) * (a * c3 - b1 * b2)


def q1_seven(p: FamilyParams) -> Fraction:
    a, b1, b2, b3, c1, c2, c3 = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3
    s = b1 * c1 + b2 * c2 + b3 * c3
    pairs = b1 * b2 * c1 * c2 + b1 * b3 * c1 * c3 + b2 * b3 * c2 * c3
    B = b1 * b2 * b3
    mixed = (b1**2 * b2 * c1**2 * c2 + b1**2 * b3 * c1**2 * c3 + b1 * b2**2 * c1 * c2**2
             + b1 * b3**2 * c1 * c3**2 + b2**2 * b3 * c2**2 * c3 + b2 * b3**2 * c2 * c3**2)
    return (c1 * c2 * c3 * pairs * a**5
            - (b1**2 * b2**2 * c1**2 * c2**2 + b1**2 * b3**2 * c1**2 * c3**2
               + b2**2 * b3**2 * c2**2 * c3**2 - 8 * B * c1 * c2 * c3 * s) * a**4
            - B * (57 * B * c1 * c2 * c3 + 8 * mixed) * a**3
            + 8 * B**2 * (b1**2 * c1**2 + b2**2 * c2**2 + b3**2 * c3**2) * a**2
            + 46 * B**2 * pairs * a**2
            - 36 * B**3 * s * a
            + 27 * B**4)


def closed_form_seven(p: FamilyParams) -> ClosedForm:
    p2 = p2_seven(p)
    return ClosedForm(p2, p4_seven(p), p2, p.a)


# ---------------------------------------------------------- eight params


def p_pair_eight(p: FamilyParams) -> ClosedForm:
    _require(p, "d")
    a, b1, b2, b3, c1, c2, c3, d = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3, p.d
    u1 = 144 * (2 * b1 * c1**3 * c2 - 4 * b2 * c1**2 * c2**2 - b3 * c1**2 * c2 * c3)
    u2 = 72 * (10 * b2 * b3 * c1 * c2 - a * c1**2 * c2 - 2 * b3**2 * c1 * c3)
    num = _p4(p) + _poly({
        4: 216 * b3**2 * c1**2 * d**2 + d * u1,
        3: a * d * u2 - 144 * a * b1 * b3 * c1**2 * d
        - 144 * b2 * b3**2 * d * (b1 * c1 + 4 * b2 * c2 - 2 * b3 * c3),
        2: 36 * a**2 * (a * b3 * c1 - 2 * b2 * b3**2) * d,
    })
    den = _p2(p) + _poly({
        3: -48 * c1**2 * c2 * d,
        2: 24 * b3 * (a * c1 - 2 * b2 * b3) * d,
    })
    return ClosedForm(den, num, den, a)


# ----------------------------------------------------------- nine params


def p_pair_nine(p: FamilyParams) -> ClosedForm:
    _require(p, "de")
    a, b1, b2, b3, c1, c2, c3, d, e = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3, p.d, p.e
    den = _p2(p) + _poly({
        4: 16 * d**2 * e**2,
        3: -16 * (3 * c2 * (c1**2 * d + c3**2 * e) + (b1 * c1 + b3 * c3 - 14 * b2 * c2) * d * e),
        2: 8 * (3 * a * b3 * c1 * d + 3 * a * b1 * c3 * e - a**2 * d * e
                - 6 * b2 * b3**2 * d - 6 * b2 * b1**2 * e),
    })
    de = d * e
    num = _p4(p) + _poly({
        2: -12 * a**4 * de
        + 36 * a**2 * (b3 * (a * c1 - 2 * b2 * b3) * d + b1 * (a * c3 - 2 * b1 * b2) * e),
        3: -72 * a * c1 * (a * c1 * c2 - 10 * b2 * b3 * c2 + 2 * b3**2 * c3) * d
        - 72 * a * c3 * (a * c2 * c3 - 10 * b1 * b2 * c2 + 2 * b1**2 * c1) * e
        - 144 * b2 * b3**2 * (b1 * c1 + 4 * b2 * c2 - 2 * b3 * c3) * d
        - 144 * b2 * b1**2 * (b3 * c3 + 4 * b2 * c2 - 2 * b1 * c1) * e
        - 144 * a * b1 * b3 * (c1**2 * d + c3**2 * e)
        + 24 * a * (a * b3 * c3 + a * b1 * c1 - 20 * a * b2 * c2 + 30 * b1 * b2 * b3) * de,
        4: 216 * (b3**2 * c1**2 * d**2 + b1**2 * c3**2 * e**2)
        - 144 * c1**2 * c2 * (b3 * c3 + 4 * b2 * c2 - 2 * b1 * c1) * d
        - 144 * c3**2 * c2 * (b1 * c1 + 4 * b2 * c2 - 2 * b3 * c3) * e
        + 48 * a**2 * d**2 * e**2
        + 96 * (b1**2 * c1**2 + b3**2 * c3**2 + 22 * b2**2 * c2**2) * de
        - 144 * ((a * b3 * c1 + 4 * b2 * b3**2) * d + (a * b1 * c3 + 4 * b2 * b1**2) * e) * de
        + 48 * (b1 * b3 * c1 * c3 + 15 * a * c1 * c2 * c3
                - 20 * b1 * b2 * c1 * c2 - 20 * b2 * b3 * c2 * c3) * de,
        5: 96 * (b1 * c1 + 22 * b2 * c2 + b3 * c3) * d**2 * e**2
        - 576 * c2 * (c3**2 * e + c1**2 * d) * de,
        6: -64 * d**3 * e**3,
    })
    return ClosedForm(den, num, den, a)


# ------------------------------------------------------------ ten params


def _p3_ten(p: FamilyParams) -> UniPoly:
    a, b1, b2, b3, c1, c2, c3 = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3
    d1, d2, d3 = p.d1, p.d2, p.d3
    return _p2(p) + _poly({
        3: -24 * (9 * a * d1 * d2 * d3
                  - 6 * (b1 * c3 * d2 * d3 + b2 * c1 * d1 * d3 + b3 * c2 * d1 * d2)
                  + 2 * (c1**2 * c2 * d1 + c1 * c3**2 * d3 + c2**2 * c3 * d2)),
        2: 24 * (a * (b1 * c2 * d2 + b2 * c3 * d3 + b3 * c1 * d1)
                 - 2 * (b1**2 * b3 * d2 + b1 * b2**2 * d3 + b2 * b3**2 * d1)),
    })


def delta6_ten(p: FamilyParams) -> UniPoly:
    """The degree-six correction P6 - p4 of the ten-parameter family."""
    _require(p, "d123")
    a, b1, b2, b3, c1, c2, c3 = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3
    d1, d2, d3 = p.d1, p.d2, p.d3
    D = d1 * d2 * d3
    bcd = b1 * c2 * d2 + b2 * c3 * d3 + b3 * c1 * d1
    return _poly({
        6: -5832 * D**2,
        5: 3888 * D * bcd
        - 864 * (c1**3 * d1**2 * d3 + c2**3 * d1 * d2**2 + c3**3 * d2 * d3**2)
        - 1296 * c1 * c2 * c3 * D,
        4: -1296 * b1 * b2 * b3 * D
        - 1296 * a * D * (b1 * c1 + b2 * c2 + b3 * c3)
        - 1296 * (b1 * b2 * c2 * c3 * d2 * d3 + b1 * b3 * c1 * c2 * d1 * d2 + b2 * b3 * c1 * c3 * d1 * d3)
        + 864 * (c1**2 * c3 * d1 * d3 + c1 * c2**2 * d1 * d2 + c2 * c3**2 * d2 * d3) * a
        - 864 * (b1**3 * d2**2 * d3 + b2**3 * d1 * d3**2 + b3**3 * d1**2 * d2)
        + 864 * (b1**2 * c1 * c3 * d2 * d3 + b1 * b2 * c1**2 * d1 * d3 + b1 * b3 * c3**2 * d2 * d3
                 + b2**2 * c1 * c2 * d1 * d3 + b2 * b3 * c2**2 * d1 * d2 + b3**2 * c2 * c3 * d1 * d2)
        + 216 * (b1**2 * c2**2 * d2**2 + b2**2 * c3**2 * d3**2 + b3**2 * c1**2 * d1**2)
        + 288 * (b1 * c1**3 * c2 * d1 + b2 * c2**3 * c3 * d2 + b3 * c1 * c3**3 * d3)
        - 576 * (b1 * c1**2 * c3**2 * d3 + b2 * c1**2 * c2**2 * d1 + b3 * c2**2 * c3**2 * d2)
        - 144 * c1 * c2 * c3 * bcd,
        3: 540 * D * a**3
        - 648 * (b1 * c3 * d2 * d3 + b2 * c1 * d1 * d3 + b3 * c2 * d1 * d2) * a**2
        - 72 * (c1**2 * c2 * d1 + c1 * c3**2 * d3 + c2**2 * c3 * d2) * a**2
        + 288 * (b1**3 * b3 * c1 * d2 + b1 * b2**3 * c2 * d3 + b2 * b3**3 * c3 * d1)
        - 576 * (b1**2 * b2**2 * c1 * d3 + b1**2 * b3**2 * c3 * d2 + b2**2 * b3**2 * c2 * d1)
        - 144 * b1 * b2 * b3 * bcd
        + 864 * (b1**2 * b2 * d2 * d3 + b1 * b3**2 * d1 * d2 + b2**2 * b3 * d1 * d3) * a
        - 144 * (b1**2 * c1 * c2 * d2 + b1 * b2 * c2**2 * d2 + b1 * b3 * c1**2 * d1
                 + b2**2 * c2 * c3 * d3 + b2 * b3 * c3**2 * d3 + b3**2 * c1 * c3 * d1) * a
        + 720 * (b1 * b2 * c1 * c3 * d3 + b1 * b3 * c2 * c3 * d2 + b2 * b3 * c1 * c2 * d1) * a,
        2: 36 * a**3 * bcd
        - 72 * a**2 * (b1**2 * b3 * d2 + b1 * b2**2 * d3 + b2 * b3**2 * d1),
    })


def p_pair_ten(p: FamilyParams) -> ClosedForm:
    _require(p, "d123")
    den = _p3_ten(p)
    return ClosedForm(den, _p4(p) + delta6_ten(p), den, p.a)


def p_pair_nine_d3zero(p: FamilyParams) -> ClosedForm:
    """The d3 = 0 slice, assembled from its own displayed polynomials."""
    _require(p, "d123")
    if p.d3 != 0:
        raise WrongFamilyShape("this slice needs d3 = 0")
    a, b1, b2, b3, c1, c2, c3 = p.a, p.b1, p.b2, p.b3, p.c1, p.c2, p.c3
    d1, d2 = p.d1, p.d2
    den = _p2(p) + _poly({
        3: 48 * c2 * (3 * b3 * d1 * d2 - c1**2 * d1 - c2 * c3 * d2),
        2: 24 * (a * b1 * c2 * d2 + a * b3 * c1 * d1 - 2 * b1**2 * b3 * d2 - 2 * b2 * b3**2 * d1),
    })
    num = _p4(p) + _poly({
        5: -864 * c2**3 * d1 * d2**2,
        4: 864 * (a * c1 * c2**2 * d1 * d2 + b2 * b3 * c2**2 * d1 * d2
                  + b3**2 * c2 * c3 * d1 * d2 - b3**3 * d1**2 * d2)
        - 576 * (b2 * c1**2 * c2**2 * d1 + b3 * c2**2 * c3**2 * d2)
        + 288 * (b1 * c1**3 * c2 * d1 + b2 * c2**3 * c3 * d2)
        - 144 * (b1 * c1 * c2**2 * c3 * d2 + b3 * c1**2 * c2 * c3 * d1)
        + 216 * (b1**2 * c2**2 * d2**2 + b3**2 * c1**2 * d1**2 - 6 * b1 * b3 * c1 * c2 * d1 * d2),
        3: -72 * (9 * a**2 * b3 * c2 * d1 * d2 + a**2 * c1**2 * c2 * d1 + a**2 * c2**2 * c3 * d2)
        - 144 * a * (b1**2 * c1 * c2 * d2 + b1 * b2 * c2**2 * d2 + b1 * b3 * c1**2 * d1
                     + b3**2 * c1 * c3 * d1)
        - 144 * (b1**2 * b2 * b3 * c2 * d2 + b1 * b2 * b3**2 * c1 * d1)
        + 720 * (a * b1 * b3 * c2 * c3 * d2 + a * b2 * b3 * c1 * c2 * d1)
        - 576 * (b1**2 * b3**2 * c3 * d2 + b2**2 * b3**2 * c2 * d1)
        + 288 * (b1**3 * b3 * c1 * d2 + b2 * b3**3 * c3 * d1 + 3 * a * b1 * b3**2 * d1 * d2),
        2: 36 * a**2 * (a * b1 * c2 * d2 + a * b3 * c1 * d1 - 2 * b1**2 * b3 * d2 - 2 * b2 * b3**2 * d1),
    })
    return ClosedForm(den, num, den, a)


def closed_form(p: FamilyParams, family: str | None = None) -> ClosedForm:
    """Dispatch on the extension shape (or an explicit family tag)."""
    family = family or {"none": "7", "d": "8", "de": "9", "d123": "10"}[p.shape]
    return {
        "7": closed_form_seven,
        "8": p_pair_eight,
        "9": p_pair_nine,
        "10": p_pair_ten,
        "9d3": p_pair_nine_d3zero,
    }[family](p)


# ------------------------------------------------------------ evaluation


def evaluate_closed_form(cf: ClosedForm, n_terms: int) -> TruncatedSeries:
    """base**(-1/4) * 2F1([1/12,5/12],[1], 1 - num**2/den**3) to n_terms."""
    pull = cf.pullback_series(n_terms)
    pre = series_pow_rational(cf.prefactor_base.to_series(n_terms), Fraction(-1, 4), cf.root)
    return pre * series_compose(gauss_series(F512, n_terms), pull)


def evaluate_closed_form_712(cf: ClosedForm, n_terms: int) -> TruncatedSeries:
    """The same function as num**(-1/6) * 2F1([1/12,7/12],[1], 1 - den**3/num**2)."""
    num, den = cf.pullback_num, cf.pullback_den
    if num[0] ** 2 != den[0] ** 3:
        raise PullbackNotVanishing("num(0)^2 != den(0)^3")
    pull = 1 - (den * den * den).to_series(n_terms) / (num * num).to_series(n_terms)
    pre = series_pow_rational(num.to_series(n_terms), Fraction(-1, 6), cf.root)
    return pre * series_compose(gauss_series(F712, n_terms), pull)


def pullback_712(p: FamilyParams) -> tuple[UniPoly, UniPoly]:
    """(1728 x^3 P5, P4^2): numerator and denominator of the [1/12,7/12] argument."""
    p5 = p5_seven(p)
    p4 = p4_seven(p)
    return p5 * UniPoly.monomial(1728, 3), p4 * p4


# ------------------------------------------------------ named subcases


def symmetric_p2_p4(a, b, c) -> tuple[UniPoly, UniPoly, UniPoly]:
    """The displayed (P2, P4, P5) for b_i = b, c_i = c."""
    a, b, c = Q(a), Q(b), Q(c)
    k = b * (a * c - b**2)
    p2 = UniPoly([a**4, -24 * a * k, 24 * a * c**3])
    p4 = UniPoly([
        a**6,
        -36 * a**3 * k,
        36 * (a**3 * c**3 + 6 * a**2 * b**2 * c**2 - 12 * a * b**4 * c + 6 * b**6),
        -432 * b * c**3 * (a * c - b**2),
        216 * c**6,
    ])
    p5 = UniPoly([a**3, -27 * k, 27 * c**3]) * UniPoly([-k, c**3]) ** 3
    return p2, p4, p5


def symmetric_subcase_forms(a, b, c, n_terms: int = 30) -> tuple[TruncatedSeries, TruncatedSeries]:
    """The [1/12,5/12] closed form and the (1/a) 2F1([1/3,2/3]) form of the symmetric member."""
    a, b, c = Q(a), Q(b), Q(c)
    p = FamilyParams(a, b, b, b, c, c, c)
    first = evaluate_closed_form(closed_form_seven(p), n_terms)
    k = b * (a * c - b**2)
    pull = UniPoly([0, 27 * k / a**3, -27 * c**3 / a**3]).to_series(n_terms)
    h = HypParams(Fraction(1, 3), Fraction(2, 3), Fraction(1))
    second = series_compose(gauss_series(h, n_terms), pull) / a
    return first, second


def degenerate_forms(p: FamilyParams, n_terms: int) -> dict[str, TruncatedSeries]:
    """Algebraic diagonals of the two collapsing subcases.

    For c3 = b1 = 0 the diagonal is (a^2 - 4 b2 c2 x)^(-1/2); for c3 = 0,
    c1 = b2 b3/a, c2 = b1 b3/a it is sqrt(a)/sqrt(a^3 + 4 b1 b2 b3 x).  Both are
    written as (1/a) (1 + t x)^(-1/2) so no square root of a is needed; this
    matches the branch rule (a^4)^(1/4) = a.
    """
    _require(p, "none")
    a = p.a
    out: dict[str, TruncatedSeries] = {}
    if p.c3 == 0 and p.b1 == 0:
        u = UniPoly([1, -4 * p.b2 * p.c2 / a**2]).to_series(n_terms)
        out["c3=b1=0"] = series_pow_rational(u, Fraction(-1, 2)) / a
    if p.c3 == 0 and p.c1 == p.b2 * p.b3 / a and p.c2 == p.b1 * p.b3 / a:
        u = UniPoly([1, 4 * p.b1 * p.b2 * p.b3 / a**3]).to_series(n_terms)
        out["c3=0,c1=b2b3/a,c2=b1b3/a"] = series_pow_rational(u, Fraction(-1, 2)) / a
    return out


def tau4_member(a, b) -> FamilyParams:
    """b_i = b, c1 = c2 = 0, c3 = b^2/a."""
    a, b = Q(a), Q(b)
    return FamilyParams(a, b, b, b, Fraction(0), Fraction(0), b * b / a)


def simple_three_pair(a, d1, d2, d3) -> tuple[UniPoly, UniPoly]:
    a = Q(a)
    D = Q(d1) * Q(d2) * Q(d3)
    p3 = UniPoly([a**4, 0, 0, -216 * a * D])
    p6 = UniPoly([a**6, 0, 0, 540 * a**3 * D, 0, 0, -5832 * D**2])
    return p3, p6


def symmetric_ten_pair(a, b, c, d) -> tuple[UniPoly, UniPoly]:
    """Displayed P3, P6 for b_i = b, c_i = c, d_i = d."""
    a, b, c, d = Q(a), Q(b), Q(c), Q(d)
    p3 = UniPoly([
        a**4,
        -24 * a * b * (a * c - b**2),
        24 * (3 * a * b * c * d + a * c**3 - 6 * b**3 * d),
        -72 * d * (3 * a * d**2 - 6 * b * c * d + 2 * c**3),
    ])
    p6 = UniPoly([
        a**6,
        -36 * a**3 * b * (a * c - b**2),
        36 * (3 * a**3 * b * c * d - 6 * a**2 * b**3 * d + a**3 * c**3 + 6 * a**2 * b**2 * c**2
              - 12 * a * b**4 * c + 6 * b**6),
        108 * (5 * a**3 * d**3 - 18 * a**2 * b * c * d**2 - 2 * a**2 * c**3 * d
               + 12 * a * b**2 * c**2 * d + 24 * a * b**3 * d**2 - 4 * a * b * c**4
               - 12 * b**4 * c * d + 4 * b**3 * c**3),
        -216 * (18 * a * b * c * d**3 + 18 * b**3 * d**3 - 12 * a * c**3 * d**2
                - 9 * b**2 * c**2 * d**2 + 6 * b * c**4 * d - c**6),
        3888 * c * d**3 * (3 * b * d - c**2),
        -5832 * d**6,
    ])
    return p3, p6


def symmetric_ten_form(a, b, c, d, n_terms: int) -> TruncatedSeries:
    """(a - 6 d x)^(-1) 2F1([1/3,2/3],[1], P) for the fully symmetric ten-parameter member."""
    a, b, c, d = Q(a), Q(b), Q(c), Q(d)
    lin = UniPoly([a, -6 * d])
    top = UniPoly([0, a**2 * d - a * b * c + b**3, c**3 - 3 * b * c * d - 3 * a * d**2, 9 * d**3]) * (-27)
    pull = top.to_series(n_terms) / (lin ** 3).to_series(n_terms)
    h = HypParams(Fraction(1, 3), Fraction(2, 3), Fraction(1))
    return series_compose(gauss_series(h, n_terms), pull) / lin.to_series(n_terms)


# ------------------------------------------------------------ sampling

FAMILY_SIZES = {"7": 7, "8": 8, "9": 9, "10": 10, "9d3": 9}


def random_family_params(rng, family: str, bound: int = 5) -> FamilyParams:
    """Parameters p/q with |p| <= bound, 1 <= q <= bound, and a != 0."""
    def r():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    a = Fraction(0)
    while a == 0:
        a = r()
    return FamilyParams.from_list(family, [a] + [r() for _ in range(FAMILY_SIZES[family] - 1)])
