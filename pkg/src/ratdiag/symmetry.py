"""Transformations of (x, y, z) that act on diagonals by a univariate change of x.

* Monomial maps (x, y, z) -> (x^A1 y^A2 z^A3, x^B1 y^B2 z^B3, x^C1 y^C2 z^C3)
  whose three column sums A_i + B_i + C_i all equal n turn the diagonal
  Phi(x) into Phi(x^n).
* Rescalings (x, y, z) -> (F(xyz) x, F(xyz) y, F(xyz) z) turn Phi(x) into
  Phi(x F(x)^3).
* Parameter rescalings of the families leave the pullback invariant, up to
  x -> x / (l1 l2 l3).

Each law is checked against the brute-force oracle, never assumed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ExpansionAtPole, InvalidMonomialMap, InvarianceViolation
from .exact import Q, Scalar, TruncatedSeries, UniPoly, format_poly, series_compose
from .families import FamilyParams, closed_form, evaluate_closed_form
from .oracle import TriSeries, diagonal, solve_series_quotient
from .report import CheckReport, series_report
from .tripoly import Exp, RationalFn3, TriPoly

Row = tuple[int, int, int]


@dataclass(frozen=True)
class MonomialMap:
    """Rows are the exponent vectors of the images of x, y and z."""

    rows: tuple[Row, Row, Row]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise InvalidMonomialMap("a monomial map needs a 3x3 exponent matrix")
        if any(v < 0 for r in rows for v in r):
            raise InvalidMonomialMap("exponents must be nonnegative")
        object.__setattr__(self, "rows", rows)
        if self.determinant() == 0:
            raise InvalidMonomialMap("exponent matrix is singular")
        sums = {sum(r[i] for r in rows) for i in range(3)}
        if len(sums) != 1:
            raise InvalidMonomialMap(f"column sums differ: {sorted(sums)}")
        for name, r in zip("xyz", rows):
            if r[0] == r[1] == r[2]:
                raise InvalidMonomialMap(f"image of {name} is a power of xyz")

    @classmethod
    def from_flat(cls, values: Sequence[int]) -> "MonomialMap":
        """A1,A2,A3,B1,B2,B3,C1,C2,C3."""
        v = [int(t) for t in values]
        if len(v) != 9:
            raise InvalidMonomialMap(f"expected 9 exponents, got {len(v)}")
        return cls((tuple(v[0:3]), tuple(v[3:6]), tuple(v[6:9])))

    def flat(self) -> list[int]:
        return [v for r in self.rows for v in r]

    def determinant(self) -> int:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    @property
    def n(self) -> int:
        """The common column sum; x -> x^n on the diagonal."""
        return sum(r[0] for r in self.rows)

    def image(self, e: Exp) -> Exp:
        i, j, k = e
        A, B, C = self.rows
        return tuple(i * A[t] + j * B[t] + k * C[t] for t in range(3))

    def then(self, other: "MonomialMap") -> "MonomialMap":
        """Apply self first, then other: f -> f(self(other(x, y, z)))."""
        return MonomialMap(tuple(other.image(r) for r in self.rows))

    def describe(self) -> str:
        def mono(r):
            parts = [v if p == 1 else f"{v}^{p}" for v, p in zip("xyz", r) if p]
            return "*".join(parts) or "1"
        return "(" + ", ".join(mono(r) for r in self.rows) + ")"


def apply_monomial(f: RationalFn3, m: MonomialMap) -> RationalFn3:
    return RationalFn3(f.numerator.map_exponents(m.image), f.denominator.map_exponents(m.image))


def substitute_power(s: TruncatedSeries, n: int, order: int) -> TruncatedSeries:
    """s(x^n) truncated at x^order."""
    terms = {n * e: s[e] for e in range(s.order) if n * e < order}
    return TruncatedSeries.from_exponents(terms, order)


def monomial_diagonal_law(f: RationalFn3, m: MonomialMap, n_terms: int) -> CheckReport:
    n = m.n
    lhs = diagonal(apply_monomial(f, m), n_terms)
    phi = diagonal(f, -(-n_terms // n))
    rhs = substitute_power(phi, n, n_terms)
    return series_report(
        f"monomial law {m.describe()}", lhs - rhs, n_terms,
        n=n, lhs=[str(c) for c in lhs.coefficients()], rhs=[str(c) for c in rhs.coefficients()],
    )


@dataclass(frozen=True)
class RescaleFn:
    """F(t) = num(t)/den(t) in the product variable t = xyz."""

    num: UniPoly
    den: UniPoly

    def __post_init__(self):
        if self.den[0] == 0:
            raise ExpansionAtPole("rescaling denominator vanishes at t = 0")
        if self.num[0] == 0:
            raise ExpansionAtPole("rescaling function vanishes at t = 0")

    @classmethod
    def of(cls, num: Sequence[Scalar], den: Sequence[Scalar] = (1,)) -> "RescaleFn":
        return cls(UniPoly(num), UniPoly(den))

    def series(self, order: int) -> TruncatedSeries:
        return self.num.to_series(order) / self.den.to_series(order)

    def describe(self) -> str:
        return f"({format_poly(self.num.coeffs, 't')})/({format_poly(self.den.coeffs, 't')})"


def _rescale_terms(p: TriPoly, powers: list[TruncatedSeries], cap: int) -> dict[Exp, Fraction]:
    out: dict[Exp, Fraction] = {}
    for (i, j, k), c in p.terms.items():
        fp = powers[i + j + k]
        for l in range(cap + 1 - max(i, j, k)):
            u = fp[l]
            if u:
                e = (i + l, j + l, k + l)
                out[e] = out.get(e, Fraction(0)) + c * u
    return {e: c for e, c in out.items() if c}


def apply_rescaling(f: RationalFn3, F: RescaleFn, cap: int) -> TriSeries:
    """Multi-Taylor series of f(xF, yF, zF) with F = F(xyz), per-variable cap."""
    degs = [sum(e) for e in f.numerator.terms] + [sum(e) for e in f.denominator.terms]
    base = F.series(cap + 1)
    powers = [TruncatedSeries.constant(1, cap + 1)]
    for _ in range(max(degs, default=0)):
        powers.append(powers[-1] * base)
    num = _rescale_terms(f.numerator, powers, cap)
    den = _rescale_terms(f.denominator, powers, cap)
    return solve_series_quotient(num, den, cap)


def rescaling_diagonal_law(f: RationalFn3, F: RescaleFn, n_terms: int) -> CheckReport:
    lhs = apply_rescaling(f, F, n_terms - 1).diagonal(n_terms)
    phi = diagonal(f, n_terms)
    inner = TruncatedSeries.variable(n_terms) * F.series(n_terms) ** 3
    rhs = series_compose(phi, inner)
    return series_report(
        f"rescaling law F = {F.describe()}", lhs - rhs, n_terms,
        lhs=[str(c) for c in lhs.coefficients()], rhs=[str(c) for c in rhs.coefficients()],
    )


# ----------------------------------------------------------- random maps


def random_monomial_map(rng: random.Random, max_entry: int = 3) -> MonomialMap:
    """Rejection sampling over matrices with entries <= max_entry."""
    while True:
        rows = [[rng.randint(0, max_entry) for _ in range(3)] for _ in range(3)]
        # Force equal column sums by topping up the last row.
        sums = [rows[0][i] + rows[1][i] for i in range(3)]
        n = max(sums) + rng.randint(0, max_entry)
        rows[2] = [n - s for s in sums]
        if max(rows[2]) > max_entry:
            continue
        try:
            return MonomialMap(tuple(tuple(r) for r in rows))
        except InvalidMonomialMap:
            continue


def random_rescale_fn(rng: random.Random, max_degree: int = 2, bound: int = 5) -> RescaleFn:
    while True:
        num = [rng.randint(-bound, bound) for _ in range(rng.randint(1, max_degree + 1))]
        den = [rng.randint(-bound, bound) for _ in range(rng.randint(1, max_degree + 1))]
        if num[0] and den[0]:
            return RescaleFn.of(num, den)


# ------------------------------------------------ family parameter scaling

# Exponent of the monomial each parameter multiplies in the denominator.
PARAM_MONOMIALS: dict[str, Exp] = {
    "a": (0, 0, 0), "b1": (1, 0, 0), "b2": (0, 1, 0), "b3": (0, 0, 1),
    "c1": (0, 1, 1), "c2": (1, 0, 1), "c3": (1, 1, 0),
    "d": (2, 1, 0), "e": (0, 1, 2), "d1": (2, 1, 0), "d2": (0, 2, 1), "d3": (1, 0, 2),
}


def weighted_params(p: FamilyParams, l1: Scalar, l2: Scalar, l3: Scalar) -> FamilyParams:
    """Multiply each parameter by l1^i l2^j l3^k for its monomial x^i y^j z^k."""
    lam = (Q(l1), Q(l2), Q(l3))
    kw = {}
    for name, (i, j, k) in PARAM_MONOMIALS.items():
        v = getattr(p, name)
        kw[name] = None if v is None else v * lam[0] ** i * lam[1] ** j * lam[2] ** k
    return FamilyParams(**kw)


def _scale_variable(s: TruncatedSeries, c: Fraction) -> TruncatedSeries:
    """s(c x)."""
    return TruncatedSeries.from_exponents({e: s[e] * c ** e for e in range(s.order)}, s.order)


def verify_param_scaling(
    p: FamilyParams, lambdas: Sequence[Scalar], order: int = 24
) -> CheckReport:
    """Pullback and diagonal invariance under (lam, l1, l2, l3).

    The overall factor multiplies every parameter and divides the diagonal by
    lam; the weights rescale x, y, z and change the diagonal by x -> x l1 l2 l3.
    """
    lam, l1, l2, l3 = (Q(v) for v in lambdas)
    if 0 in (lam, l1, l2, l3):
        raise ValueError("scaling factors must be nonzero")
    cf = closed_form(p)
    q = weighted_params(p.scaled(lam), l1, l2, l3)
    cq = closed_form(q)
    L = l1 * l2 * l3
    pull = cf.pullback_series(order)
    pull_q = _scale_variable(cq.pullback_series(order), 1 / L)
    diag = evaluate_closed_form(cf, order)
    diag_q = _scale_variable(evaluate_closed_form(cq, order), 1 / L) * lam
    r1 = series_report("pullback", pull_q - pull, order)
    r2 = series_report("diagonal", diag_q - diag, order)
    bad = [r.first_mismatch for r in (r1, r2) if not r.holds]
    return CheckReport(
        "parameter scaling", not bad, order, min(bad) if bad else None,
        {"lambdas": [str(v) for v in (lam, l1, l2, l3)], "family": p.shape,
         "pullback_holds": r1.holds, "diagonal_holds": r2.holds},
        InvarianceViolation,
    )
