"""Multivariate polynomials over Q, monomial orders, and the text grammar.

Monomials are plain tuples of non-negative ints, one entry per coordinate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

from .exact import as_rational, format_rational

Monomial = tuple


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All exponent tuples of total degree ``d``."""
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


# --- weights --------------------------------------------------------------


def u_weight(m: Monomial, weights) -> int:
    """Weighted degree ``sum(e_i * u_i)``."""
    u = weights.u if isinstance(weights, WeightAssignment) else weights
    if len(u) != len(m):
        raise ValueError("weight vector and monomial have different lengths")
    return sum(e * w for e, w in zip(m, u))


@dataclass(frozen=True)
class WeightAssignment:
    """Split ``V = W + W'`` of the coordinates with integer torus weights.

    Coordinates in ``W`` carry weight 0, those in ``W'`` a positive weight.
    """

    u: tuple
    names: tuple = ()

    def __post_init__(self):
        u = tuple(self.u)
        for w in u:
            if not isinstance(w, int) or isinstance(w, bool):
                raise ValueError(f"weights must be integers, got {w!r}")
            if w < 0:
                raise ValueError(f"weights must be non-negative, got {w}")
        if not any(w == 0 for w in u):
            raise ValueError("at least one coordinate must lie in W (weight 0)")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_split(cls, names: Sequence[str], w_coords: Iterable[str], weights: Mapping[str, int]):
        w_set = set(w_coords)
        unknown = (w_set | set(weights)) - set(names)
        if unknown:
            raise ValueError(f"unknown coordinate(s): {', '.join(sorted(unknown))}")
        u = []
        for name in names:
            if name in w_set:
                if weights.get(name, 0) != 0:
                    raise ValueError(f"coordinate {name} is in W but has nonzero weight")
                u.append(0)
            else:
                if name not in weights:
                    raise ValueError(f"coordinate {name} of W' has no weight")
                w = weights[name]
                if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                    raise ValueError(f"weight of W' coordinate {name} must be a positive integer, got {w!r}")
                u.append(w)
        return cls(tuple(u), tuple(names))

    @property
    def w_indices(self) -> tuple:
        return tuple(i for i, w in enumerate(self.u) if w == 0)

    @property
    def w_prime_indices(self) -> tuple:
        return tuple(i for i, w in enumerate(self.u) if w > 0)

    @property
    def max_weight(self) -> int:
        """The constant C0: the largest coordinate weight."""
        return max(self.u)

    @property
    def min_positive_weight(self) -> int | None:
        pos = [w for w in self.u if w > 0]
        return min(pos) if pos else None

    def scaled(self, c: int) -> "WeightAssignment":
        return WeightAssignment(tuple(c * w for w in self.u), self.names)


# --- orders ---------------------------------------------------------------


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order; larger key means larger monomial.

    ``weight_refined`` compares the weighted degree first (larger wins) and
    breaks ties with grevlex.
    """

    kind: str = "grevlex"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "weight_refined"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        w = self.weights.u if isinstance(self.weights, WeightAssignment) else self.weights
        w = tuple(w)
        if self.kind == "weight_refined":
            if not w:
                raise ValueError("weight_refined needs a weight vector")
            if any(x < 0 for x in w):
                raise ValueError("weight_refined needs non-negative weights")
        object.__setattr__(self, "weights", w)

    def key(self, m: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        return (sum(e * w for e, w in zip(m, self.weights)), _grevlex_key(m))

    def __str__(self):
        if self.kind == "weight_refined":
            return f"weight_refined({','.join(map(str, self.weights))})"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def weight_refined(weights) -> MonomialOrder:
    return MonomialOrder("weight_refined", weights)


# --- polynomials ------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial ``{exponent tuple: Fraction}`` with no zero entries."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            c = as_rational(c)
            if c != 0:
                clean[m] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, nvars, terms):
        p = object.__new__(cls)
        object.__setattr__(p, "nvars", nvars)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "MultiPoly":
        return cls(len(m), {tuple(m): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def degrees(self) -> set:
        return {sum(m) for m in self.terms}

    @property
    def total_degree(self) -> int:
        return max(self.degrees()) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def weights_of_terms(self, weights) -> set:
        return {u_weight(m, weights) for m in self.terms}

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_term(self, order: MonomialOrder) -> tuple:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c) -> "MultiPoly":
        c = as_rational(c)
        if c == 0:
            return MultiPoly._raw(self.nvars, {})
        return MultiPoly._raw(self.nvars, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "MultiPoly":
        c = as_rational(c)
        if c == 0:
            return MultiPoly._raw(self.nvars, {})
        return MultiPoly._raw(self.nvars, {mono_mul(m, mono): c * v for m, v in self.terms.items()})

    def monic(self, order: MonomialOrder) -> "MultiPoly":
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        return self.scale(1 / lc)

    def variables_used(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"MultiPoly({format_poly(self, names)})"


def initial_form(p: MultiPoly, weights) -> MultiPoly:
    """Terms of ``p`` of maximal weighted degree.

    This is the side of the degeneration that survives as the torus
    parameter goes to 0 in the central-fibre convention used throughout.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no initial form")
    top = max(u_weight(m, weights) for m in p.terms)
    return MultiPoly(p.nvars, {m: c for m, c in p.terms.items() if u_weight(m, weights) == top})


# --- text grammar ------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, text="", line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.text = text
        self.line = line
        self.column = column


class UnknownCoordinateError(PolynomialSyntaxError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<decimal>\d+\.\d*)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^−]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mo = _TOKEN.match(text, pos)
        if not mo:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolynomialSyntaxError(f"unexpected character {text[start]!r}", text, *_line_col(text, start))
        kind = mo.lastgroup
        value = mo.group(kind)
        if value == "−":
            value = "-"
        tokens.append((kind, value, mo.start(kind)))
        pos = mo.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _line_col(text: str, offset: int):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.names = list(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, msg, tok, cls=PolynomialSyntaxError):
        raise cls(msg, self.text, *_line_col(self.text, tok[2]))

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] if tok[0] != "end" else "end of input"
            self.error(f"expected {want}, got {got!r}", tok)
        return tok

    def parse(self) -> MultiPoly:
        nvars = len(self.names)
        result: dict = {}
        first = True
        while True:
            tok = self.peek()
            sign = 1
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
            elif not first:
                break
            elif tok[0] == "end":
                self.error("empty polynomial", tok)
            m, c = self.term()
            c *= sign
            v = result.get(m, 0) + c
            if v:
                result[m] = v
            else:
                result.pop(m, None)
            first = False
        tok = self.peek()
        if tok[0] != "end":
            self.error(f"unexpected token {tok[1]!r}", tok)
        return MultiPoly(nvars, result)

    def term(self):
        exps = [0] * len(self.names)
        coeff = Fraction(1)
        tok = self.peek()
        if tok[0] == "decimal":
            self.error("coefficients must be integers or fractions p/q", tok)
        if tok[0] == "int":
            coeff = self.coefficient()
            if self.peek()[0] == "op" and self.peek()[1] == "*":
                self.take()
            else:
                return tuple(exps), coeff
        self.factor(exps)
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            self.factor(exps)
        return tuple(exps), coeff

    def coefficient(self) -> Fraction:
        num = int(self.expect("int")[1])
        if self.peek()[0] == "op" and self.peek()[1] == "/":
            self.take()
            tok = self.expect("int")
            den = int(tok[1])
            if den == 0:
                self.error("zero denominator", tok)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, exps):
        tok = self.take()
        if tok[0] != "name":
            got = tok[1] if tok[0] != "end" else "end of input"
            self.error(f"expected a coordinate name, got {got!r}", tok)
        if tok[1] not in self.index:
            self.error(f"unknown coordinate {tok[1]!r}", tok, UnknownCoordinateError)
        power = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            ptok = self.take()
            if ptok[0] != "int":
                self.error("exponent must be a positive integer", ptok)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.error("exponent must be a positive integer", self.peek())
            power = int(ptok[1])
            if power < 1:
                self.error("exponent must be a positive integer", ptok)
        exps[self.index[tok[1]]] += power


def parse_polynomial(text: str, coordinates: Sequence[str]) -> MultiPoly:
    """Parse ``text`` such as ``"Z1^2 - 3/2*Z0*Z2"`` into a :class:`MultiPoly`."""
    return _Parser(text, coordinates).parse()


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: MultiPoly, names: Sequence[str], order: MonomialOrder = GREVLEX) -> str:
    """Canonical text form; ``parse_polynomial`` inverts it."""
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms(order)):
        mono = format_monomial(m, names)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)
