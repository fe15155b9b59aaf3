"""Exact univariate algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  :class:`UniPoly` and
:class:`RationalFunction` are immutable; every rational function is kept
with common factors cancelled and a monic denominator, so questions about
behaviour as ``l -> oo`` reduce to comparing degrees and leading
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class InterpolationError(ValueError):
    """Raised when sample points do not come from a polynomial of the stated degree."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def format_rational(x: Fraction) -> str:
    """Render as ``p/q`` (or ``p`` when the denominator is 1)."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class UniPoly:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, exponent: int, c=1) -> "UniPoly":
        return cls([0] * exponent + [c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lc
            if c == 0:
                continue
            quot[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.leading
        return UniPoly(c / lc for c in self.coeffs)

    def scale_argument(self, c) -> "UniPoly":
        """Return ``p(c*x)``."""
        c = as_rational(c)
        return UniPoly(a * c**i for i, a in enumerate(self.coeffs))

    def shift_degree(self, k: int) -> "UniPoly":
        """Multiply by ``x**k``."""
        if self.is_zero():
            return self
        return UniPoly([0] * k + list(self.coeffs))

    def format(self, var: str = "l") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"UniPoly({self.format()})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RationalFunction:
    """Quotient of two :class:`UniPoly` values, reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UniPoly) else UniPoly.constant(num)
        den = UniPoly.constant(1) if den is None else den
        den = den if isinstance(den, UniPoly) else UniPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UniPoly(), UniPoly.constant(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.leading
            num = UniPoly(c / lc for c in num.coeffs)
            den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, UniPoly):
            return cls(x)
        if isinstance(x, (int, Fraction)):
            return cls(UniPoly.constant(x))
        raise TypeError(f"cannot coerce {x!r} to RationalFunction")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def degree(self) -> int:
        """``deg(num) - deg(den)``; meaningless for the zero function."""
        return self.num.degree - self.den.degree

    def __call__(self, x):
        x = as_rational(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def integer_form(self) -> tuple:
        """``(num, den)`` scaled to coprime integer coefficients, positive leading denominator."""
        coeffs = self.num.coeffs + self.den.coeffs
        scale = Fraction(lcm(*(c.denominator for c in coeffs)))
        scale /= gcd(*(int(c * scale) for c in coeffs))
        return self.num * scale, self.den * scale

    def format(self, var: str = "l") -> str:
        if self.is_polynomial():
            return self.num.format(var)
        num, den = self.integer_form()
        num_s, den_s = num.format(var), den.format(var)
        if sum(1 for c in num.coeffs if c != 0) > 1:
            num_s = f"({num_s})"
        return f"{num_s}/({den_s})"

    def __repr__(self):
        return f"RationalFunction({self.format()})"


@dataclass(frozen=True)
class LimitClass:
    """Exact limit of a rational function as the variable tends to +infinity."""

    kind: str  # "finite" | "plus_infinity" | "minus_infinity"
    value: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("finite", "plus_infinity", "minus_infinity"):
            raise ValueError(f"unknown limit kind {self.kind!r}")
        if (self.kind == "finite") != (self.value is not None):
            raise ValueError("finite limits carry a value, infinite ones do not")

    @classmethod
    def finite(cls, value) -> "LimitClass":
        return cls("finite", as_rational(value))

    def __str__(self):
        if self.kind == "finite":
            return format_rational(self.value)
        return "+infinity" if self.kind == "plus_infinity" else "-infinity"


def interpolate_poly(points: Sequence[tuple], degree_bound: int) -> UniPoly:
    """Fit through the first ``degree_bound + 1`` points, check the rest.

    Raises :class:`InterpolationError` on a repeated abscissa, on too few
    points, or when a verification point is off the fitted polynomial.
    """
    pts = [(as_rational(x), as_rational(y)) for x, y in points]
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    if len(pts) < degree_bound + 1:
        raise InterpolationError(f"need at least {degree_bound + 1} points, got {len(pts)}")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise InterpolationError("duplicate abscissa")

    fit = pts[: degree_bound + 1]
    # Newton divided differences
    table = [y for _, y in fit]
    m = len(fit)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (fit[i][0] - fit[i - j][0])
    poly = UniPoly.constant(table[-1])
    for i in range(m - 2, -1, -1):
        poly = poly * UniPoly([-fit[i][0], 1]) + table[i]

    for x, y in pts[degree_bound + 1 :]:
        if poly(x) != y:
            raise InterpolationError(
                f"point ({format_rational(x)}, {format_rational(y)}) is off the fitted "
                f"polynomial {poly.format('x')}",
                point=(x, y),
            )
    return poly


def limit_at_infinity(f) -> LimitClass:
    f = RationalFunction.coerce(f)
    if f.is_zero() or f.degree < 0:
        return LimitClass.finite(0)
    ratio = f.num.leading / f.den.leading
    if f.degree == 0:
        return LimitClass.finite(ratio)
    return LimitClass("plus_infinity" if ratio > 0 else "minus_infinity")


def expansion_coefficients(f, lowest_exponent: int) -> dict[int, Fraction]:
    """All coefficients of ``f`` at infinity with exponent >= ``lowest_exponent``.

    Zero coefficients are included; the result maps exponent to coefficient.
    """
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return {}
    top = f.degree
    if lowest_exponent > top:
        return {}
    shift = max(0, -lowest_exponent)
    quot, _ = divmod(f.num.shift_degree(shift), f.den)
    out = {}
    for e in range(top, lowest_exponent - 1, -1):
        out[e] = quot.coeff(e + shift)
    return out


def expansion_at_infinity(f, count: int) -> list[tuple[int, Fraction]]:
    """First ``count`` nonzero terms of ``f`` in descending powers of the variable."""
    if count < 1:
        raise ValueError("count must be >= 1")
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return []
    top = f.degree
    terms: list[tuple[int, Fraction]] = []
    depth = count
    while True:
        low = top - depth
        coeffs = expansion_coefficients(f, low)
        terms = [(e, c) for e, c in sorted(coeffs.items(), reverse=True) if c != 0]
        if len(terms) >= count:
            return terms[:count]
        if low <= 0:
            # zero remainder: nothing below `low` survives
            _, rem = divmod(f.num.shift_degree(-low), f.den)
            if rem.is_zero():
                return terms
        depth *= 2
