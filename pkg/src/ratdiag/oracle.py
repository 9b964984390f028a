"""Brute-force diagonals from truncated multi-Taylor expansions.

``multi_taylor`` returns the unique truncated series T with
``denominator * T == numerator`` for every exponent triple inside the cap.
It is solved term by term (each coefficient only needs coefficients that are
componentwise smaller), with the denominator scaled to integers so the inner
loop never computes a gcd.  ``multi_taylor_geometric`` is the slow textbook
route, (1/a0) * sum_k (-S/a0)**k * numerator, kept as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

from .errors import ExpansionAtPole
from .exact import TruncatedSeries
from .tripoly import Exp, RationalFn3, TriPoly


@dataclass(frozen=True)
class TriSeries:
    """Trivariate series truncated at degree ``cap`` in each variable."""

    cap: int
    terms: Mapping[Exp, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {e: Fraction(c) for e, c in self.terms.items() if c and max(e) <= self.cap}
        object.__setattr__(self, "terms", clean)

    def __getitem__(self, e: Exp) -> Fraction:
        if max(e) > self.cap:
            raise IndexError(f"{e} lies outside cap {self.cap}")
        return self.terms.get(e, Fraction(0))

    def diagonal(self, n_terms: int | None = None) -> TruncatedSeries:
        n = self.cap + 1 if n_terms is None else n_terms
        if n > self.cap + 1:
            raise ValueError("diagonal requested beyond the cap")
        return TruncatedSeries([self[(m, m, m)] for m in range(n)], n)

    def __eq__(self, other) -> bool:
        return isinstance(other, TriSeries) and self.cap == other.cap and self.terms == other.terms

    @classmethod
    def from_poly(cls, p: TriPoly, cap: int) -> "TriSeries":
        return cls(cap, dict(p.terms))

    def __add__(self, other: "TriSeries") -> "TriSeries":
        cap = min(self.cap, other.cap)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return TriSeries(cap, acc)


def _integer_scale(terms: Mapping[Exp, Fraction]) -> tuple[int, dict[Exp, int]]:
    """Return (L, {e: L*c}) with every L*c an integer."""
    L = 1
    for c in terms.values():
        L = lcm(L, c.denominator)
    return L, {e: int(c * L) for e, c in terms.items()}


def solve_series_quotient(
    num: Mapping[Exp, Fraction], den: Mapping[Exp, Fraction], cap: int
) -> TriSeries:
    """Truncated series of num/den, both given as exponent maps."""
    if not den.get((0, 0, 0)):
        raise ExpansionAtPole("denominator vanishes at the origin")
    Ld, dint = _integer_scale(den)
    Ln, nint = _integer_scale(num)
    a0 = dint.pop((0, 0, 0))
    steps = [(e, c * a0 ** (sum(e) - 1)) for e, c in dint.items() if max(e) <= cap]
    n = cap + 1
    U: dict[Exp, int] = {}
    # U[m] = a0**(|m|+1) * T[m] where T is the series of nint/dint.
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = nint.get((i, j, k), 0)
                if acc:
                    acc *= a0 ** (i + j + k)
                for (s1, s2, s3), c in steps:
                    if s1 <= i and s2 <= j and s3 <= k:
                        u = U.get((i - s1, j - s2, k - s3))
                        if u:
                            acc -= c * u
                if acc:
                    U[(i, j, k)] = acc
    scale = Fraction(Ld, Ln)
    terms = {e: scale * Fraction(u, a0 ** (sum(e) + 1)) for e, u in U.items()}
    return TriSeries(cap, terms)


def multi_taylor(f: RationalFn3, cap: int) -> TriSeries:
    if f.denominator.constant_term() == 0:
        raise ExpansionAtPole("denominator vanishes at the origin")
    return solve_series_quotient(f.numerator.terms, f.denominator.terms, cap)


def _capped_product(a: Mapping[Exp, Fraction], b: Mapping[Exp, Fraction], cap: int) -> dict:
    out: dict[Exp, Fraction] = {}
    for (a1, a2, a3), u in a.items():
        for (b1, b2, b3), v in b.items():
            e = (a1 + b1, a2 + b2, a3 + b3)
            if max(e) <= cap:
                out[e] = out.get(e, Fraction(0)) + u * v
    return {e: c for e, c in out.items() if c}


def multi_taylor_geometric(f: RationalFn3, cap: int) -> TriSeries:
    """(1/a0) * sum_k (-S/a0)**k * numerator with S = denominator - a0."""
    a0 = f.denominator.constant_term()
    if a0 == 0:
        raise ExpansionAtPole("denominator vanishes at the origin")
    step = {e: -c / a0 for e, c in f.denominator.terms.items() if e != (0, 0, 0)}
    power = {e: c / a0 for e, c in f.numerator.terms.items() if max(e) <= cap}
    total = dict(power)
    min_deg = min((sum(e) for e in step), default=1)
    k = 0
    while power and min_deg * (k + 1) <= 3 * cap:
        power = _capped_product(power, step, cap)
        k += 1
        for e, c in power.items():
            total[e] = total.get(e, Fraction(0)) + c
    return TriSeries(cap, total)


def diagonal(f: RationalFn3, n_terms: int) -> TruncatedSeries:
    """sum_m R_{m,m,m} x**m for m < n_terms."""
    if n_terms <= 0:
        return TruncatedSeries([], 0)
    return multi_taylor(f, n_terms - 1).diagonal(n_terms)
