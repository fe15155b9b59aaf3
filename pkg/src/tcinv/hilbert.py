"""Bigraded Hilbert series of monomial ideals.

For a monomial ideal ``M`` in ``Q[x_0..x_r-1]`` and integer weights ``u``,
the series

    H(q, t) = sum over standard monomials m of  q^deg(m) * t^u(m)
            = K(q, t) / prod_i (1 - q t^{u_i})

records, degree by degree, how many standard monomials carry each weight.
``K`` is computed with the pivot-splitting recursion
``K(M) = K(M + (p)) + X^p K(M : p)`` for a pure-power pivot ``p``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .exact import UniPoly, interpolate_poly

# bivariate integer polynomials are dicts {(qdeg, tdeg): coeff}


def _bi_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (qa, ta), ca in a.items():
        for (qb, tb), cb in b.items():
            k = (qa + qb, ta + tb)
            v = out.get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _bi_add(a: dict, b: dict, shift=(0, 0)) -> dict:
    out = dict(a)
    for (q, t), c in b.items():
        k = (q + shift[0], t + shift[1])
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def minimalize(gens: Iterable[tuple]) -> tuple:
    """Minimal generators of the monomial ideal, in a canonical order."""
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out: list = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _numerator(gens: tuple, weights: tuple) -> tuple:
    def grade(m):
        return (sum(m), sum(e * w for e, w in zip(m, weights)))

    if not gens:
        return (((0, 0), 1),)
    supports = [[i for i, e in enumerate(g) if e] for g in gens]
    if all(len(s) == 1 for s in supports) or _pairwise_coprime(supports):
        acc = {(0, 0): 1}
        for g in gens:
            acc = _bi_mul(acc, {(0, 0): 1, grade(g): -1})
        return tuple(sorted(acc.items()))

    # pivot on the variable occurring in the most generators
    nvars = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(nvars)]
    mixed = [g for g, s in zip(gens, supports) if len(s) > 1]
    m = mixed[0]
    i = max((j for j in range(nvars) if m[j]), key=lambda j: (counts[j], -j))
    exps = sorted(g[i] for g in gens if g[i])
    e = min(exps[len(exps) // 2], m[i])
    pivot = tuple(e if j == i else 0 for j in range(nvars))

    plus = minimalize(gens + (pivot,))
    colon = minimalize(tuple(tuple(max(0, a - b) for a, b in zip(g, pivot)) for g in gens))
    left = dict(_numerator(plus, weights))
    right = dict(_numerator(colon, weights))
    return tuple(sorted(_bi_add(left, right, grade(pivot)).items()))


def _pairwise_coprime(supports) -> bool:
    seen: set = set()
    for s in supports:
        if seen.intersection(s):
            return False
        seen.update(s)
    return True


def _int_poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _strip(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divide_one_minus_q(p: list) -> tuple:
    """Return ``(quotient, divisible)`` for ``p / (1 - q)``."""
    # p = (1 - q) r  <=>  r_k = p_0 + ... + p_k
    if not p:
        return [], True
    if sum(p) != 0:
        return None, False
    r, acc = [], 0
    for c in p[:-1]:
        acc += c
        r.append(acc)
    return _strip(r), True


def series_coefficient(numerator: Sequence[int], exponent: int, ell: int) -> int:
    """Coefficient of ``q^ell`` in ``numerator(q) / (1 - q)^exponent``."""
    total = 0
    for j, c in enumerate(numerator):
        if c and j <= ell:
            if exponent == 0:
                total += c if j == ell else 0
            else:
                total += c * comb(ell - j + exponent - 1, exponent - 1)
    return total


def stable_polynomial(numerator: Sequence[int], exponent: int, start: int = 1) -> tuple:
    """Polynomial agreeing with the coefficients of ``numerator / (1-q)^exponent``.

    Returns ``(poly, m0)`` where ``m0 >= start`` is the least degree from
    which the coefficients equal ``poly``.  The polynomial is recovered by
    exact interpolation past the provable stabilization bound
    ``deg(numerator) - exponent + 1``, with verification points.
    """
    numerator = _strip(list(numerator))
    if exponent == 0:
        poly = UniPoly()
        bound = len(numerator)
    else:
        bound = max(start, len(numerator) - exponent)
        pts = [(m, series_coefficient(numerator, exponent, m)) for m in range(bound, bound + exponent + 2)]
        poly = interpolate_poly(pts, exponent - 1)
    m0 = max(bound, start)
    while m0 > start and poly(m0 - 1) == series_coefficient(numerator, exponent, m0 - 1):
        m0 -= 1
    return poly, m0


class WeightedHilbertSeries:
    """Exact bigraded Hilbert series of ``Q[x]/M`` for a monomial ideal ``M``."""

    def __init__(self, gens: Iterable[tuple], weights: Sequence[int]):
        self.weights = tuple(weights)
        self.gens = minimalize(tuple(tuple(g) for g in gens))
        for g in self.gens:
            if len(g) != len(self.weights):
                raise ValueError("generator length differs from the number of weights")
        self.numerator = dict(_numerator(self.gens, self.weights))

    @classmethod
    def from_leading_monomials(cls, monomials, weights):
        return cls(monomials, weights)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    # --- specializations -------------------------------------------------

    def numerator_at_t1(self) -> list:
        top = max((q for q, _ in self.numerator), default=-1)
        out = [0] * (top + 1)
        for (q, _), c in self.numerator.items():
            out[q] += c
        return _strip(out)

    def numerator_t_derivative_at_t1(self) -> list:
        top = max((q for q, _ in self.numerator), default=-1)
        out = [0] * (top + 1)
        for (q, t), c in self.numerator.items():
            out[q] += c * t
        return _strip(out)

    def numerator_at_t0(self) -> list:
        top = max((q for q, _ in self.numerator), default=-1)
        out = [0] * (top + 1)
        for (q, t), c in self.numerator.items():
            if t == 0:
                out[q] += c
        return _strip(out)

    def hilbert_rational(self) -> tuple:
        """``(h, e)`` with ``sum_l N_l q^l = h(q)/(1-q)^e`` and ``h(1) != 0``."""
        h, e = self.numerator_at_t1(), self.nvars
        while e > 0:
            r, ok = _divide_one_minus_q(h)
            if not ok or not h:
                break
            h, e = r, e - 1
        return h, e

    def weight_sum_rational(self) -> tuple:
        """``(p, e)`` with ``sum_l B_l q^l = p(q)/(1-q)^e``; ``B_l`` is the total weight in degree l."""
        k1 = self.numerator_at_t1()
        kt = self.numerator_t_derivative_at_t1()
        total_u = sum(self.weights)
        # d/dt [K / prod(1 - q t^u)] at t = 1  =  (K_t (1-q) + U q K) / (1-q)^(r+1)
        p = _int_poly_mul(kt, [1, -1]) if kt else []
        uqk = [0] + [total_u * c for c in k1] if k1 else []
        size = max(len(p), len(uqk))
        p = [(p[i] if i < len(p) else 0) + (uqk[i] if i < len(uqk) else 0) for i in range(size)]
        p, e = _strip(p), self.nvars + 1
        while e > 0 and p:
            r, ok = _divide_one_minus_q(p)
            if not ok:
                break
            p, e = r, e - 1
        return p, e

    def zero_weight_rational(self) -> tuple:
        """``(p, e)`` for the generating function of weight-0 standard monomials."""
        p = self.numerator_at_t0()
        e = sum(1 for w in self.weights if w == 0)
        while e > 0 and p:
            r, ok = _divide_one_minus_q(p)
            if not ok:
                break
            p, e = r, e - 1
        return p, e

    def krull_dimension(self) -> int:
        """Krull dimension of the quotient (-1 for the zero ring)."""
        h, e = self.hilbert_rational()
        return e if h else -1

    # --- coefficients ----------------------------------------------------

    def hilbert_function(self, ell: int) -> int:
        h, e = self.hilbert_rational()
        return series_coefficient(h, e, ell)

    def weight_sum(self, ell: int) -> int:
        p, e = self.weight_sum_rational()
        return series_coefficient(p, e, ell)

    def zero_weight_count(self, ell: int) -> int:
        p, e = self.zero_weight_rational()
        return series_coefficient(p, e, ell)

    def weight_distribution(self, lmax: int) -> list:
        """``[Counter(weight -> count) for l in 0..lmax]`` by truncated expansion."""
        grid: dict = {}
        for (q, t), c in self.numerator.items():
            if q <= lmax:
                grid[(q, t)] = grid.get((q, t), 0) + c
        for u in self.weights:
            # multiply by 1/(1 - q t^u): g[q][t] += g[q-1][t-u], increasing q
            new = dict(grid)
            for q in range(1, lmax + 1):
                for (qq, t), c in list(new.items()):
                    if qq == q - 1 and c:
                        k = (q, t + u)
                        new[k] = new.get(k, 0) + c
            grid = {k: v for k, v in new.items() if v}
        out = [Counter() for _ in range(lmax + 1)]
        for (q, t), c in grid.items():
            if c < 0:
                raise AssertionError("negative coefficient in a Hilbert series expansion")
            out[q][t] += c
        return out

    def stable_polynomials(self, start: int = 1) -> dict:
        """Stable polynomials for N, B and the weight-0 count, with their thresholds."""
        out = {}
        for name, (p, e) in (
            ("N", self.hilbert_rational()),
            ("B", self.weight_sum_rational()),
            ("n", self.zero_weight_rational()),
        ):
            out[name] = stable_polynomial(p, e, start)
        return out


def hilbert_polynomial_degree(series: WeightedHilbertSeries) -> int:
    return series.krull_dimension() - 1


def leading_coefficient(series: WeightedHilbertSeries) -> Fraction:
    h, e = series.hilbert_rational()
    if not h or e == 0:
        return Fraction(0)
    # h(1) / (e-1)! is the leading coefficient of the Hilbert polynomial
    return Fraction(sum(h), factorial(e - 1))
