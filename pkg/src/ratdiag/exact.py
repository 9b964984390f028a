"""Exact scalars, univariate polynomials, rational functions and truncated series.

Every scalar is a ``fractions.Fraction``; it is always kept in lowest terms
with a positive denominator, which is all the package needs from a rational
type.  Series are truncated Laurent series carrying their own precision:
a series of order ``N`` is known modulo ``x**N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    CompositionAtNonzeroPoint,
    InexactDivision,
    NonRationalRoot,
    ZeroDerivative,
)

Scalar = Union[int, Fraction]


def Q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def rational_str(q: Fraction) -> str:
    return str(q)


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r if r ** k == n else None


def rational_root(c: Fraction, k: int) -> Fraction:
    """The real k-th root of c, positive when k is even."""
    if k <= 0:
        raise ValueError("root index must be positive")
    sign = 1
    if c < 0:
        if k % 2 == 0:
            raise NonRationalRoot(f"even root of negative {c}")
        sign, c = -1, -c
    n = _iroot(c.numerator, k)
    d = _iroot(c.denominator, k)
    if n is None or d is None:
        raise NonRationalRoot(f"{c} has no rational root of index {k}")
    return sign * Fraction(n, d)


def rational_power(c: Fraction, alpha: Fraction, root: Fraction | None = None) -> Fraction:
    """c**alpha under the branch rule.

    ``root`` selects the branch: it must satisfy root**q == c where q is the
    denominator of alpha, and the result is root**p.  Without it the real
    root is used (positive for even q).
    """
    alpha = Q(alpha)
    p, q = alpha.numerator, alpha.denominator
    if root is None:
        root = rational_root(c, q)
    else:
        root = Q(root)
        if root ** q != c:
            raise NonRationalRoot(f"branch {root} is not a {q}-th root of {c}")
    if root == 0:
        if p < 0:
            raise ZeroDivisionError("negative power of zero")
        return Fraction(0) if p else Fraction(1)
    return root ** p


# ---------------------------------------------------------------- UniPoly


class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, c: Scalar) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other) -> "UniPoly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = Q(other)
            return UniPoly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "UniPoly":
        return self * Q(c)

    def div_scalar(self, c: Scalar) -> "UniPoly":
        c = Q(c)
        return UniPoly(a / c for a in self.coeffs)

    def div_xk(self, k: int) -> "UniPoly":
        """Exact division by x**k."""
        if any(self[i] for i in range(k)):
            raise InexactDivision(f"polynomial not divisible by x^{k}")
        return UniPoly(self.coeffs[k:])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lead = other.coeffs[-1]
        for k in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[k] / lead
            if c:
                s = k - other.degree
                quot[s] = c
                for j, b in enumerate(other.coeffs):
                    rem[s + j] -= c * b
        return UniPoly(quot), UniPoly(rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InexactDivision("polynomial division leaves a remainder")
        return q

    def monic(self) -> "UniPoly":
        return self.div_scalar(self.coeffs[-1]) if self.coeffs else self

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic greatest common divisor (Euclid over the rationals)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, t):
        """Horner evaluation; works for scalars, UniPoly and series."""
        scalar = isinstance(t, (int, Fraction))
        if not self.coeffs:
            return Fraction(0) if scalar else t * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        if not scalar and isinstance(acc, Fraction):
            return t * 0 + acc
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def to_series(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[:order], order)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        return format_poly(self.coeffs, "x")

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def format_poly(coeffs: Sequence[Fraction], var: str, low: int = 0) -> str:
    """Render ``sum coeffs[i] * var**(low+i)`` highest degree first."""
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        e = low + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}" if e > 0 else f"{var}^({e})"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append(("-" if sign == "-" else "") + body if not parts else f" {sign} {body}")
    return "".join(parts) or "0"


# ----------------------------------------------------------------- RatFn


@dataclass(frozen=True)
class RatFn:
    """Univariate rational function num/den (not normalized)."""

    num: UniPoly
    den: UniPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    @classmethod
    def of(cls, num, den=1) -> "RatFn":
        num = num if isinstance(num, UniPoly) else UniPoly.const(num)
        den = den if isinstance(den, UniPoly) else UniPoly.const(den)
        return cls(num, den)

    def _lift(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            return other
        return RatFn.of(other)

    def __add__(self, other) -> "RatFn":
        o = self._lift(other)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den)

    def __sub__(self, other) -> "RatFn":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFn":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFn":
        o = self._lift(other)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        o = self._lift(other)
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFn":
        return self._lift(other) / self

    def __pow__(self, n: int) -> "RatFn":
        if n >= 0:
            return RatFn(self.num ** n, self.den ** n)
        return RatFn(self.den ** -n, self.num ** -n)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, t):
        if isinstance(t, RatFn):
            return self.compose(t)
        if isinstance(t, (int, Fraction)):
            return self.num(Q(t)) / self.den(Q(t))
        return self.num(t) / self.den(t)

    def compose(self, inner: "RatFn") -> "RatFn":
        """self(inner) without expanding nested fractions."""
        deg = max(self.num.degree, self.den.degree, 0)
        p, q = inner.num, inner.den
        pw_p = [UniPoly.const(1)]
        pw_q = [UniPoly.const(1)]
        for _ in range(deg):
            pw_p.append(pw_p[-1] * p)
            pw_q.append(pw_q[-1] * q)

        def hom(poly: UniPoly) -> UniPoly:
            acc = UniPoly()
            for k, c in enumerate(poly.coeffs):
                acc = acc + pw_p[k] * pw_q[deg - k] * c
            return acc

        return RatFn(hom(self.num), hom(self.den))

    def derivative(self) -> "RatFn":
        return RatFn(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def normalized(self) -> "RatFn":
        """Common factors cancelled, denominator monic."""
        g = self.num.gcd(self.den)
        num, den = self.num.exact_div(g), self.den.exact_div(g)
        lead = den.coeffs[-1]
        return RatFn(num.div_scalar(lead), den.div_scalar(lead))

    def to_series(self, order: int) -> "TruncatedSeries":
        return series_from_rational(self.num, self.den, order)

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"


# ------------------------------------------------------- TruncatedSeries


class TruncatedSeries:
    """Laurent series ``sum c_e x**e + O(x**order)``.

    ``coeffs[i]`` is the coefficient of ``x**(i - pole_order)``; the stored
    range is ``-pole_order .. order-1``.  A positive pole order always has a
    nonzero leading coefficient.
    """

    __slots__ = ("coeffs", "order", "pole_order")

    def __init__(self, coeffs: Iterable[Scalar], order: int, pole_order: int = 0):
        if pole_order < 0:
            raise ValueError("pole_order must be >= 0")
        cs = [Q(c) for c in coeffs]
        width = order + pole_order
        if width < 0:
            # Precision is worse than the pole itself: nothing is known.
            cs, pole_order, width = [], 0, 0
            order = min(order, 0)
        cs = cs[:width] + [Fraction(0)] * (width - len(cs))
        lead = 0
        while lead < min(pole_order, len(cs)) and cs[lead] == 0:
            lead += 1
        object.__setattr__(self, "coeffs", tuple(cs[lead:]))
        object.__setattr__(self, "pole_order", pole_order - lead)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c: Scalar, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        return cls([0, 1], order)

    @classmethod
    def from_exponents(cls, terms: dict[int, Scalar], order: int) -> "TruncatedSeries":
        low = min([0] + [e for e in terms])
        cs = [Fraction(0)] * (order - low)
        for e, c in terms.items():
            if e < order:
                cs[e - low] = Q(c)
        return cls(cs, order, -low)

    @property
    def low(self) -> int:
        return -self.pole_order

    def __getitem__(self, e: int) -> Fraction:
        """Coefficient of x**e; asking beyond the precision is an error."""
        if e >= self.order:
            raise IndexError(f"x^{e} lies beyond the truncation order {self.order}")
        i = e + self.pole_order
        return self.coeffs[i] if i >= 0 else Fraction(0)

    def coefficients(self, n: int | None = None) -> list[Fraction]:
        """Coefficients of x**0 .. x**(n-1) (default: up to the order)."""
        n = self.order if n is None else n
        return [self[e] for e in range(n)]

    def valuation(self) -> int:
        """Exponent of the first nonzero known coefficient (order if none)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i - self.pole_order
        return self.order

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a series beyond its precision")
        return TruncatedSeries(self.coeffs, order, self.pole_order)

    # comparison on the overlapping range
    def first_mismatch(self, other: "TruncatedSeries") -> int | None:
        top = min(self.order, other.order)
        for e in range(min(self.low, other.low), top):
            a = self[e] if e >= self.low else Fraction(0)
            b = other[e] if e >= other.low else Fraction(0)
            if a != b:
                return e
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None  # type: ignore[assignment]

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(Q(other), self.order)

    def __add__(self, other) -> "TruncatedSeries":
        o = self._lift(other)
        order = min(self.order, o.order)
        low = min(self.low, o.low)
        cs = []
        for e in range(low, order):
            a = self[e] if e >= self.low else 0
            b = o[e] if e >= o.low else 0
            cs.append(a + b)
        return TruncatedSeries(cs, order, -low)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.order, self.pole_order)

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            c = Q(other)
            return TruncatedSeries([c * a for a in self.coeffs], self.order, self.pole_order)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            c = Q(other)
            return TruncatedSeries([a / c for a in self.coeffs], self.order, self.pole_order)
        return series_mul(self, other.inverse())

    def __rtruediv__(self, other) -> "TruncatedSeries":
        return self.inverse() * Q(other)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.constant(1, self.order + max(0, n * self.pole_order))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by x**k exactly (k may be negative)."""
        low = self.low + k
        if low <= 0:
            return TruncatedSeries(self.coeffs, self.order + k, -low)
        return TruncatedSeries([0] * low + list(self.coeffs), self.order + k, 0)

    def inverse(self) -> "TruncatedSeries":
        v = self.valuation()
        if v >= self.order:
            raise ZeroDivisionError("series is zero to its known precision")
        unit = [self[e] for e in range(v, self.order)]
        m = len(unit)
        inv = [Fraction(0)] * m
        inv[0] = 1 / unit[0]
        for n in range(1, m):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if unit[k]:
                    acc += unit[k] * inv[n - k]
            inv[n] = -acc * inv[0]
        # x^-v * inv, known for exponents -v .. -v+m-1
        return TruncatedSeries(inv, m - v, v) if v >= 0 else \
            TruncatedSeries([0] * (-v) + inv, m - v, 0)

    def derivative(self) -> "TruncatedSeries":
        return series_derivative(self)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return series_compose(self, inner)

    def pow_rational(self, alpha: Scalar, root: Scalar | None = None) -> "TruncatedSeries":
        return series_pow_rational(self, alpha, root)

    def to_json(self) -> dict:
        return {
            "pole_order": self.pole_order,
            "order": self.order,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        return cls([Fraction(c) for c in data["coeffs"]], data["order"], data["pole_order"])

    def __str__(self) -> str:
        body = format_poly(list(self.coeffs), "x", self.low)
        return f"{body} + O(x^{self.order})"

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product; the order is capped by both operands and their poles."""
    order = min(a.order + min(b.valuation(), 0), b.order + min(a.valuation(), 0))
    order = min(order, a.order, b.order)
    low = a.low + b.low
    width = order - low
    if width <= 0:
        return TruncatedSeries([], order, max(0, -low))
    out = [Fraction(0)] * width
    ac, bc = a.coeffs, b.coeffs
    for i, x in enumerate(ac):
        if not x or i >= width:
            continue
        lim = min(len(bc), width - i)
        for j in range(lim):
            y = bc[j]
            if y:
                out[i + j] += x * y
    if low >= 0:
        return TruncatedSeries([0] * low + out, order, 0)
    return TruncatedSeries(out, order, -low)


def series_from_rational(num: UniPoly, den: UniPoly, order: int) -> TruncatedSeries:
    """Laurent expansion of num/den at 0 to the given order."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    v = next(i for i, c in enumerate(den.coeffs) if c)
    # Work with enough terms so that the pole does not eat the precision.
    d = TruncatedSeries(den.coeffs, order + 2 * v)
    n = TruncatedSeries(num.coeffs, order + 2 * v)
    return (n * d.inverse()).truncate(order)


def series_pow_rational(
    s: TruncatedSeries, alpha: Scalar, root: Scalar | None = None
) -> TruncatedSeries:
    """s**alpha for a series with nonzero constant term.

    The constant term is c0**alpha under the branch rule of
    :func:`rational_power`; the rest is the binomial series of
    ``(s/c0)**alpha`` computed with the usual first-order recurrence
    ``n g_n = sum_k ((alpha+1)k - n) u_k g_{n-k}``.
    """
    alpha = Q(alpha)
    if s.pole_order:
        raise NonRationalRoot("rational power of a series with a pole")
    c0 = s[0] if s.order > 0 else Fraction(0)
    if c0 == 0:
        raise NonRationalRoot("rational power needs a nonzero constant term")
    lead = rational_power(c0, alpha, root)
    u = [c / c0 for c in s.coeffs]
    n_terms = s.order
    g = [Fraction(0)] * n_terms
    g[0] = Fraction(1)
    for n in range(1, n_terms):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if u[k]:
                acc += ((alpha + 1) * k - n) * u[k] * g[n - k]
        g[n] = acc / n
    return TruncatedSeries([lead * c for c in g], s.order)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(x)); inner must vanish at 0.

    Precision: at most inner's order, and at most outer.order * val(inner)
    since the unknown tail of outer contributes from that exponent on.
    """
    if inner.pole_order or (inner.order > 0 and inner[0] != 0):
        raise CompositionAtNonzeroPoint("inner series must vanish at 0")
    if outer.pole_order:
        raise CompositionAtNonzeroPoint("outer series must be a power series")
    v = inner.valuation()
    order = min(inner.order, outer.order * max(v, 1))
    inner = inner.truncate(order)
    top = min(outer.order, (order + v - 1) // v if v else outer.order)
    acc = TruncatedSeries.constant(outer[top - 1] if top else 0, order)
    for k in range(top - 2, -1, -1):
        acc = acc * inner + outer[k]
    return acc.truncate(order) if acc.order >= order else acc


def series_derivative(s: TruncatedSeries) -> TruncatedSeries:
    low = s.low
    cs = [(low + i) * c for i, c in enumerate(s.coeffs)]
    new_low = low - 1
    if new_low >= 0:
        return TruncatedSeries([0] * new_low + cs, s.order - 1, 0)
    return TruncatedSeries(cs, s.order - 1, -new_low)


def schwarzian(y: TruncatedSeries) -> TruncatedSeries:
    """{y, x} = y'''/y' - 3/2 (y''/y')**2 as a Laurent series."""
    d1 = series_derivative(y)
    if d1.valuation() >= d1.order:
        raise ZeroDerivative("series is constant to its known precision")
    d2 = series_derivative(d1)
    d3 = series_derivative(d2)
    inv = d1.inverse()
    r = d2 * inv
    return d3 * inv - r * r * Fraction(3, 2)
