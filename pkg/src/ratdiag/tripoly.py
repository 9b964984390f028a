"""Sparse polynomials in x, y, z and the rational functions built from them.

The same class doubles as a bivariate polynomial (z exponent zero) for the
modular curves.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ExpansionAtPole, InexactDivision, ParseError
from .exact import Q, Scalar

Exp = tuple[int, int, int]


class TriPoly:
    """Polynomial stored as ``{(i, j, k): coefficient}`` without zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, Scalar] | Iterable[tuple[Exp, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, Fraction] = {}
        for e, c in items:
            if len(e) == 2:
                e = (e[0], e[1], 0)
            if min(e) < 0:
                raise ValueError(f"negative exponent {e}")
            acc[e] = acc.get(e, Fraction(0)) + Q(c)
        object.__setattr__(self, "terms", {e: c for e, c in acc.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("TriPoly is immutable")

    @classmethod
    def const(cls, c: Scalar) -> "TriPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "TriPoly":
        return cls({{"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[name]: 1})

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, axis: int) -> int:
        return max((e[axis] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TriPoly.const(other)
        return isinstance(other, TriPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _lift(self, other) -> "TriPoly":
        return other if isinstance(other, TriPoly) else TriPoly.const(other)

    def __add__(self, other) -> "TriPoly":
        o = self._lift(other)
        return TriPoly(list(self.terms.items()) + list(o.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "TriPoly":
        return TriPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "TriPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TriPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "TriPoly":
        if not isinstance(other, TriPoly):
            c = Q(other)
            return TriPoly({e: c * v for e, v in self.terms.items()})
        acc: dict[Exp, Fraction] = {}
        for (a1, a2, a3), u in self.terms.items():
            for (b1, b2, b3), v in other.terms.items():
                e = (a1 + b1, a2 + b2, a3 + b3)
                acc[e] = acc.get(e, Fraction(0)) + u * v
        return TriPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TriPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = TriPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, x=0, y=0, z=0):
        """Substitute values (scalars or series) for the variables."""
        pw: list[dict[int, object]] = [{0: 1}, {0: 1}, {0: 1}]
        vals = (x, y, z)
        total = None
        for e, c in sorted(self.terms.items()):
            term = c
            for axis in range(3):
                k = e[axis]
                if k:
                    cache = pw[axis]
                    if k not in cache:
                        cache[k] = vals[axis] ** k
                    term = cache[k] * term
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def leading(self) -> tuple[Exp, Fraction]:
        """Lexicographically largest term."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "TriPoly") -> "TriPoly":
        """Quotient of an exact division (lex order); raises InexactDivision."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        (l1, l2, l3), lc = other.leading()
        rem = self
        quot: dict[Exp, Fraction] = {}
        while not rem.is_zero():
            (e1, e2, e3), c = rem.leading()
            if e1 < l1 or e2 < l2 or e3 < l3:
                raise InexactDivision("polynomial division leaves a remainder")
            m = (e1 - l1, e2 - l2, e3 - l3)
            q = c / lc
            quot[m] = q
            rem = rem - TriPoly({m: q}) * other
        return TriPoly(quot)

    def map_exponents(self, fn) -> "TriPoly":
        return TriPoly([(fn(e), c) for e, c in self.terms.items()])

    def swap_xy(self) -> "TriPoly":
        return self.map_exponents(lambda e: (e[1], e[0], e[2]))

    def to_json(self) -> list[list]:
        return [[list(e), str(c)] for e, c in sorted(self.terms.items())]

    def __str__(self) -> str:
        return format_tripoly(self)

    def __repr__(self) -> str:
        return f"TriPoly({self})"


def format_tripoly(p: TriPoly, names: tuple[str, str, str] = ("x", "y", "z")) -> str:
    if not p.terms:
        return "0"
    out = []
    for e, c in sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0])):
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


@dataclass(frozen=True)
class RationalFn3:
    numerator: TriPoly
    denominator: TriPoly

    def __post_init__(self):
        if self.denominator.constant_term() == 0:
            raise ExpansionAtPole("denominator vanishes at the origin")

    @classmethod
    def inverse_of(cls, den: TriPoly) -> "RationalFn3":
        return cls(TriPoly.const(1), den)

    def __add__(self, other: "RationalFn3") -> "RationalFn3":
        if self.denominator == other.denominator:
            return RationalFn3(self.numerator + other.numerator, self.denominator)
        return RationalFn3(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )


# ---------------------------------------------------------------- parser


class _Parser:
    """expr := term (('+'|'-') term)*; term := unary ('*' unary | '/' unary)*;
    unary := '-' unary | power; power := atom ('^' int)?;
    atom := number | x | y | z | '(' expr ')'.

    Division is allowed only by a nonzero constant.
    """

    def __init__(self, text: str):
        self.s = "".join(text.split())
        self.i = 0

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def fail(self, msg: str):
        raise ParseError(f"{msg} at position {self.i} in {self.s!r}")

    def parse(self) -> TriPoly:
        if not self.s:
            self.fail("empty expression")
        p = self.expr()
        if self.i != len(self.s):
            self.fail(f"unexpected {self.peek()!r}")
        return p

    def expr(self) -> TriPoly:
        p = self.term()
        while True:
            if self.take("+"):
                p = p + self.term()
            elif self.take("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> TriPoly:
        p = self.unary()
        while True:
            if self.take("*"):
                p = p * self.unary()
            elif self.take("/"):
                d = self.unary()
                if set(d.terms) - {(0, 0, 0)} or d.is_zero():
                    self.fail("division by a non-constant or zero")
                p = p * (1 / d.constant_term())
            else:
                return p

    def unary(self) -> TriPoly:
        if self.take("-"):
            return -self.unary()
        if self.take("+"):
            return self.unary()
        return self.power()

    def power(self) -> TriPoly:
        base = self.atom()
        if self.take("^"):
            start = self.i
            while self.peek().isdigit():
                self.i += 1
            if start == self.i:
                self.fail("expected a nonnegative integer exponent")
            return base ** int(self.s[start:self.i])
        return base

    def atom(self) -> TriPoly:
        ch = self.peek()
        if ch in ("x", "y", "z"):
            self.i += 1
            return TriPoly.var(ch)
        if ch == "(":
            self.i += 1
            p = self.expr()
            if not self.take(")"):
                self.fail("missing ')'")
            return p
        if ch.isdigit():
            start = self.i
            while self.peek().isdigit():
                self.i += 1
            return TriPoly.const(int(self.s[start:self.i]))
        self.fail(f"unexpected {ch!r}")


def parse_tripoly(text: str) -> TriPoly:
    """Parse an expression such as ``"1 - x - y - z + y*z"`` or ``"3/2*x^2*y"``."""
    return _Parser(text).parse()
