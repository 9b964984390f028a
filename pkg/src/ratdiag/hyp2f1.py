"""Gauss 2F1 series and a catalog of two-pullback identities checked by series."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CompositionAtNonzeroPoint, GammaPole, UnknownIdentity
from .exact import Q, RatFn, TruncatedSeries, UniPoly, series_compose, series_pow_rational


@dataclass(frozen=True)
class HypParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction = Fraction(1)

    def __post_init__(self):
        for n in ("alpha", "beta", "gamma"):
            object.__setattr__(self, n, Q(getattr(self, n)))
        if self.gamma <= 0 and self.gamma.denominator == 1:
            raise GammaPole(f"gamma = {self.gamma} is a nonpositive integer")

    def __str__(self) -> str:
        return f"[{self.alpha},{self.beta}],[{self.gamma}]"


def H(alpha, beta, gamma=1) -> HypParams:
    return HypParams(Fraction(alpha), Fraction(beta), Fraction(gamma))


def gauss_series(h: HypParams, n_terms: int) -> TruncatedSeries:
    """sum (alpha)_k (beta)_k / ((gamma)_k k!) x^k for k < n_terms."""
    cs = []
    c = Fraction(1)
    for k in range(n_terms):
        cs.append(c)
        c = c * (h.alpha + k) * (h.beta + k) / ((h.gamma + k) * (k + 1))
    return TruncatedSeries(cs, n_terms)


def pullbacked_2f1(
    h: HypParams, prefactor: TruncatedSeries, pullback: TruncatedSeries, n_terms: int
) -> TruncatedSeries:
    """prefactor * 2F1(h; pullback)."""
    if pullback.order > 0 and (pullback.pole_order or pullback[0] != 0):
        raise CompositionAtNonzeroPoint("pullback must vanish at 0")
    return prefactor * series_compose(gauss_series(h, n_terms), pullback)


# ----------------------------------------------------------------- catalog

X = RatFn.of(UniPoly.x())
ONE = RatFn.of(1)


@dataclass(frozen=True)
class Side:
    """const * prod(f_i ** e_i) * 2F1(hyp; pullback)."""

    hyp: HypParams
    pullback: RatFn
    factors: tuple[tuple[RatFn, Fraction], ...] = ()
    const: Fraction = Fraction(1)

    def prefactor(self, n_terms: int) -> TruncatedSeries:
        acc = TruncatedSeries.constant(self.const, n_terms)
        for f, e in self.factors:
            acc = acc * series_pow_rational(f.to_series(n_terms), e)
        return acc

    def series(self, n_terms: int) -> TruncatedSeries:
        return pullbacked_2f1(
            self.hyp, self.prefactor(n_terms), self.pullback.to_series(n_terms), n_terms
        )


def side(hyp, pullback, *factors, const=1) -> Side:
    return Side(hyp, pullback, tuple((f, Fraction(e)) for f, e in factors), Fraction(const))


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: Side
    rhs: Side
    note: str = ""


@dataclass
class IdentityReport:
    id: str
    holds: bool
    order: int
    first_mismatch: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"id": self.id, "holds": self.holds, "order": self.order}
        if self.first_mismatch is not None:
            out["first_mismatch_exponent"] = self.first_mismatch
        return out


def _p(*cs) -> RatFn:
    return RatFn.of(UniPoly(cs))


def _build_catalog() -> dict[str, IdentityRecord]:
    x = X
    F512, F712 = H(Fraction(1, 12), Fraction(5, 12)), H(Fraction(1, 12), Fraction(7, 12))
    F1323, F1313 = H(Fraction(1, 3), Fraction(2, 3)), H(Fraction(1, 3), Fraction(1, 3))
    F1212, F1414 = H(Fraction(1, 2), Fraction(1, 2)), H(Fraction(1, 4), Fraction(1, 4))
    F1434 = H(Fraction(1, 4), Fraction(3, 4))
    q = Fraction
    recs: list[IdentityRecord] = []

    def add(tag, lhs, rhs, note=""):
        recs.append(IdentityRecord(tag, lhs, rhs, note))

    add("2F1identitybis",
        side(F712, x),
        side(F512, -x / (1 - x), (1 - x, q(-1, 12))))

    # level-3 Hauptmodul chain; the lower parameter is 1 throughout
    z = x
    add("identity1z",
        side(F512, 1728 * z**3 / ((z + 27) * (z + 243) ** 3), (9 * (z + 27) / (z + 243), q(1, 4))),
        side(F512, 1728 * z / ((z + 27) * (z + 3) ** 3), ((z + 27) / (9 * (z + 3)), q(1, 4))))
    add("identity1z2",
        side(F512, 1728 * z / ((z + 27) * (z + 3) ** 3), ((z + 27) / (9 * (z + 3)), q(1, 4))),
        side(F1323, z / (z + 27)))

    add("identity13a",
        side(F1313, x),
        side(F1323, -x / (1 - x), (1 - x, q(-1, 3))))
    add("identity13b",
        side(F1313, x),
        side(F512, -64 * x / ((1 - 9 * x) ** 3 * (1 - x)), ((1 - 9 * x) ** 3 * (1 - x), q(-1, 12))))
    add("identity13c",
        side(F1313, -x / 27),
        side(F1323, x / (x + 27), (1 + x / 27, q(-1, 3))))
    add("identity13d",
        side(F1313, -x / 27),
        side(F512, 1728 * x / ((x + 3) ** 3 * (x + 27)), ((x + 3) ** 3 * (x + 27) / 729, q(-1, 12))))

    add("identity0",
        side(F1323, x, ((9 - 8 * x) / 9, q(1, 4))),
        side(F512, 64 * x**3 * (1 - x) / (9 - 8 * x) ** 3))

    # symmetric seven-parameter member a=2, b=1, c=3: both closed forms
    a, b, c = q(2), q(1), q(3)
    k = b * (a * c - b**2)
    p2 = a * (24 * c**3 * x**2 - 24 * k * x + a**3)
    p4 = (216 * c**6 * x**4 - 432 * b * c**3 * (a * c - b**2) * x**3
          + 36 * (a**3 * c**3 + 6 * a**2 * b**2 * c**2 - 12 * a * b**4 * c + 6 * b**6) * x**2
          - 36 * a**3 * k * x + a**6)
    add("canalso2",
        side(F512, 1 - p4**2 / p2**3, (p2, q(-1, 4))),
        side(F1323, -27 / a**3 * x * (c**3 * x - k), const=1 / a),
        note="symmetric member (a,b,c) = (2,1,3)")

    # tau -> 4 chain at a = 1, b = 2 (b != 1 separates the two readings of the
    # third prefactor)
    a, b = q(1), q(2)
    q1 = 16 * b**6 * x**2 + 16 * a**3 * b**3 * x + a**6
    q2 = 4096 * b**6 * x**2 + 256 * a**3 * b**3 * x + a**6
    q3 = 256 * b**6 * x**2 - 224 * a**3 * b**3 * x + a**6
    lin = a**3 + 16 * b**3 * x
    P1 = 1728 * a**3 * b**12 * x**4 * lin / q1**3
    # The second pullback carries (a^3 + 16 b^3 x) to the first power; that is
    # what z = 256 b^3 x / a^3 gives in 1728 z (z+16) / (z^2+16z+16)^3.  The
    # fourth power only belongs to the third pullback.
    P21 = 1728 * a**12 * b**3 * x * lin / q2**3
    P22 = -1728 * a**3 * b**3 * x * lin**4 / q3**3
    s1 = side(F512, P1, (q1, q(-1, 4)))
    add("identi_12", s1, side(F512, P21, (q2, q(-1, 4))),
        note="(a,b) = (1,2); second pullback with (a^3 + 16 b^3 x) to the first power")
    add("identi_13", s1, side(F512, P22, (q3, q(-1, 4))),
        note="(a,b) = (1,2); third prefactor read with 224 a^3 b^3 x")
    add("identi_14", s1, side(F1212, -16 * b**3 / a**3 * x), note="(a,b) = (1,2)")

    add("identity1",
        side(F1212, -x / 16),
        side(F512, 1728 * x * (x + 16) / (x**2 + 16 * x + 16) ** 3,
             (x**2 + 16 * x + 16, q(-1, 4)), const=2))

    add("ident3quart0",
        side(F512, 27 * x**4 * (x**2 + 1) / (3 * x**2 + 4) ** 3, (1 + 3 * x**2 / 4, q(-1, 4))),
        side(F1434, -x**2))
    add("ident3quart",
        side(F512, 27 * x**4 * (1 - x**2) / (4 - 3 * x**2) ** 3, (1 - 3 * x**2 / 4, q(-1, 4))),
        side(F1434, x**2))

    add("newident",
        side(F1434, x**2 / (2 - x) ** 2),
        side(F1434, 4 * x / (1 + x) ** 2, ((2 - x) / (2 * (1 + x)), q(1, 2))))
    add("newident2bis",
        side(F1434, x**2 / (2 - x) ** 2),
        side(F1434, -4 * x * (1 - x) / (1 - 2 * x) ** 2, ((2 - x) / (2 * (1 - 2 * x)), q(1, 2))))
    add("newident3bis",
        side(F1434, 4 * x / (1 + x) ** 2),
        side(F1434, -4 * x * (1 - x) / (1 - 2 * x) ** 2, ((1 + x) / (1 - 2 * x), q(1, 2))))
    add("Funquarttroisquart",
        side(F1434, x**4 / (2 - x**2) ** 2),
        side(F1434, 16 * x * (1 + x) ** 2 / (1 + 6 * x + x**2) ** 2,
             ((2 - x**2) / (2 * (1 + 6 * x + x**2)), q(1, 2))))

    add("identity14a",
        side(F1414, -x / 64),
        side(F512, 1728 * x / (x + 16) ** 3, ((x + 16) / 16, q(-1, 4))))
    add("identity14b",
        side(F1414, -x / 64),
        side(F512, 1728 * x**2 / (x + 256) ** 3, ((x + 256) / 256, q(-1, 4))))
    add("identitiesFIRSTBIS4",
        side(F1414, -x**2 / (64 * (x + 16))),
        side(F1414, -x * (x + 16) / 64, ((x + 16) / 16, q(1, 4))))
    add("identity12a",
        side(F1212, -x / 16),
        side(F512, 1728 * x * (x + 16) / (x**2 + 16 * x + 16) ** 3,
             ((x**2 + 16 * x + 16) / 16, q(-1, 4))))
    add("identity12b",
        side(F1212, -x / 16),
        side(F512, 1728 * x**4 * (x + 16) / (x**2 + 256 * x + 4096) ** 3,
             ((x**2 + 256 * x + 4096) / 4096, q(-1, 4))))
    add("identitiesFIRSTBIS",
        side(F1212, 8 * x * (1 + x**2) / (1 + x) ** 4),
        side(F1212, x**4, ((1 + x) ** 2, 1)))

    add("identity1bis_a",
        side(F1434, x),
        side(F512, 27 * x * (1 - x) ** 2 / (1 + 3 * x) ** 3, (1 + 3 * x, q(-1, 4))))
    add("identity1bis_b",
        side(F1434, 64 * x**2),
        side(F1212, 16 * x / (1 + 8 * x), (1 + 8 * x, q(-1, 2))))
    add("identityquat",
        side(F1434, (x / (2 - x)) ** 2),
        side(F1212, x, ((2 - x) / 2, q(1, 2))))

    add("hyperiden_a",
        side(F1323, -27 * x),
        side(F512, -1728 * x * (1 + 27 * x) ** 3 / (1 - 216 * x) ** 3, (1 - 216 * x, q(-1, 4))))
    add("hyperiden_b",
        side(F1323, -27 * x),
        side(F512, 1 - (1 + 540 * x - 5832 * x**2) ** 2 / (1 - 216 * x) ** 3,
             (1 - 216 * x, q(-1, 4))))
    add("hypergeomidentity",
        side(F1323, -27 * x * (1 - 3 * x + 9 * x**2) / (1 - 6 * x) ** 3, (1 - 6 * x, -1)),
        side(F1323, -27 * x**3))
    add("doesexist",
        side(F1323, x**3),
        side(F1323, 9 * x * (1 + x + x**2) / (1 + 2 * x) ** 3, (1 + 2 * x, -1)))
    add("doesexist2",
        side(F1313, -x**3 / (1 - x**3)),
        side(F1313, -9 * x * (1 + x + x**2) / (1 - x) ** 3,
             ((1 + x + x**2) / (1 - x) ** 2, q(1, 3))))

    # cubic-terms member a = 2, d1 d2 d3 = 3: P3 = a^4 (1 - 216 D x^3 / a^3)
    a, D = q(2), q(3)
    p3 = -216 * a * D * x**3 + a**4
    p6 = -5832 * D**2 * x**6 + 540 * a**3 * D * x**3 + a**6
    add("simpleThree_a",
        side(F1323, -27 * D / a**3 * x**3),
        side(F512, 1 - p6**2 / p3**3, (1 - 216 * D / a**3 * x**3, q(-1, 4))),
        note="a = 2, d1 d2 d3 = 3")
    add("simpleThree_b",
        side(F1323, -27 * D / a**3 * x**3),
        side(F512, 1 - p6**2 / p3**3, (p3, q(-1, 4)), const=a),
        note="same member, prefactor written as a * P3^(-1/4)")

    return {r.id: r for r in recs}


CATALOG: dict[str, IdentityRecord] = _build_catalog()


def catalog_ids() -> list[str]:
    return list(CATALOG)


def compare_sides(tag: str, lhs: Side, rhs: Side, n_terms: int) -> IdentityReport:
    left, right = lhs.series(n_terms), rhs.series(n_terms)
    mismatch = left.first_mismatch(right)
    order = min(left.order, right.order)
    return IdentityReport(tag, mismatch is None, order, mismatch)


def verify_identity(tag: str, n_terms: int = 30) -> IdentityReport:
    if tag not in CATALOG:
        raise UnknownIdentity(tag)
    rec = CATALOG[tag]
    return compare_sides(tag, rec.lhs, rec.rhs, n_terms)
