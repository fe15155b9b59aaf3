"""Buchberger's algorithm and the ideal operations built on it."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .polyring import (
    GREVLEX,
    MonomialOrder,
    MultiPoly,
    format_poly,
    initial_form,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    weight_refined,
)

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 40


class DegreeCapExceeded(RuntimeError):
    """A basis element exceeded the configured degree cap."""

    def __init__(self, cap, degree, basis_size):
        super().__init__(
            f"Buchberger aborted: a basis element of degree {degree} exceeds the cap {cap} "
            f"(basis size so far {basis_size})"
        )
        self.cap = cap
        self.degree = degree


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder
    reduced: bool = True

    @property
    def leading_monomials(self) -> tuple:
        return tuple(g.leading_monomial(self.order) for g in self.generators)

    @property
    def nvars(self):
        return self.generators[0].nvars if self.generators else None

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


class Ideal:
    """Ideal in ``Q[names]`` given by generators, caching one basis per order."""

    def __init__(self, names: Sequence[str], gens: Sequence[MultiPoly]):
        self.names = tuple(names)
        nv = len(self.names)
        kept = []
        for g in gens:
            if g.nvars != nv:
                raise ValueError(f"generator has {g.nvars} variables, ring has {nv}")
            if not g.is_zero():
                kept.append(g)
        self.gens = tuple(kept)
        self._gb_cache: dict = {}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def groebner(self, order: MonomialOrder = GREVLEX, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
        gb = self._gb_cache.get(order)
        if gb is None:
            gb = buchberger(self, order, degree_cap=degree_cap)
            self._gb_cache[order] = gb
        return gb

    def format_gens(self) -> list:
        return [format_poly(g, self.names) for g in self.gens]

    def __repr__(self):
        return f"Ideal({', '.join(self.format_gens())})"


def _lead(p: MultiPoly, order: MonomialOrder):
    return p.leading_term(order)


def _reduce(p: MultiPoly, basis: list, leads: list, order: MonomialOrder, full: bool = True) -> MultiPoly:
    """Remainder of ``p`` on division by ``basis``.

    With ``full`` every term is reduced, otherwise only the leading term.
    """
    terms = dict(p.terms)
    rem: dict = {}
    key = order.key
    while terms:
        m = max(terms, key=key)
        c = terms[m]
        for g, (lm, lc) in zip(basis, leads):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                f = c / lc
                for gm, gc in g.terms.items():
                    t = mono_mul(gm, q)
                    v = terms.get(t, 0) - f * gc
                    if v:
                        terms[t] = v
                    else:
                        terms.pop(t, None)
                break
        else:
            rem[m] = terms.pop(m)
            if not full:
                rem.update(terms)
                break
    return MultiPoly._raw(p.nvars, rem)


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    lf, cf = _lead(f, order)
    lg, cg = _lead(g, order)
    lcm = mono_lcm(lf, lg)
    return f.mul_term(mono_div(lcm, lf), 1 / cf) - g.mul_term(mono_div(lcm, lg), 1 / cg)


def _interreduce(polys: list, order: MonomialOrder) -> list:
    """Minimal, monic, fully inter-reduced basis sorted by leading monomial (descending)."""
    polys = [p.monic(order) for p in polys if not p.is_zero()]
    leads = [p.leading_monomial(order) for p in polys]
    keep = []
    for i, (p, lm) in enumerate(zip(polys, leads)):
        redundant = False
        for j, lm2 in enumerate(leads):
            if j == i:
                continue
            if mono_divides(lm2, lm) and (lm2 != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(p)
    out = []
    for i, p in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = _reduce(p, others, [_lead(o, order) for o in others], order)
        out.append(r.monic(order))
    out.sort(key=lambda p: order.key(p.leading_monomial(order)), reverse=True)
    return out


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` for ``order``.

    Pairs are processed smallest lcm first; the coprime-leading-monomial and
    chain criteria skip pairs known to reduce to zero.  Raises
    :class:`DegreeCapExceeded` when a new basis element has total degree
    above ``degree_cap``.
    """
    basis: list = []
    leads: list = []
    pairs: set = set()

    def add(h):
        lm, lc = _lead(h, order)
        idx = len(basis)
        basis.append(h)
        leads.append((lm, lc))
        for j in range(idx):
            pairs.add((j, idx))

    for g in ideal.gens:
        h = _reduce(g, basis, leads, order) if basis else g
        if not h.is_zero():
            if h.total_degree > degree_cap:
                raise DegreeCapExceeded(degree_cap, h.total_degree, len(basis))
            add(h.monic(order))

    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(mono_lcm(leads[p[0]][0], leads[p[1]][0])), p))
        pairs.discard((i, j))
        lmi, lmj = leads[i][0], leads[j][0]
        lcm = mono_lcm(lmi, lmj)
        if mono_mul(lmi, lmj) == lcm:
            continue
        if _chain_criterion(i, j, lcm, leads, pairs):
            continue
        h = _reduce(s_polynomial(basis[i], basis[j], order), basis, leads, order)
        if h.is_zero():
            continue
        if h.total_degree > degree_cap:
            raise DegreeCapExceeded(degree_cap, h.total_degree, len(basis))
        add(h.monic(order))

    reduced = _interreduce(basis, order)
    log.debug("buchberger: %d generators -> %d basis elements (%s)", len(ideal.gens), len(reduced), order)
    return GroebnerBasis(tuple(reduced), order, True)


def _chain_criterion(i, j, lcm, leads, pairs) -> bool:
    for k in range(len(leads)):
        if k in (i, j):
            continue
        if not mono_divides(leads[k][0], lcm):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Fully reduced remainder of ``p`` modulo ``gb``."""
    basis = list(gb.generators)
    return _reduce(p, basis, [_lead(g, gb.order) for g in basis], gb.order)


def contains(ideal: Ideal, p: MultiPoly, order: MonomialOrder = GREVLEX) -> bool:
    return normal_form(p, ideal.groebner(order)).is_zero()


def same_ideal(a: Ideal, b: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    """Equality of ideals via equality of reduced bases."""
    return a.groebner(order).generators == b.groebner(order).generators


def initial_ideal(ideal: Ideal, weights) -> Ideal:
    """Ideal of weighted initial forms: the flat limit under the torus action.

    Generated by the initial forms of a Groebner basis for the weight order
    refined by grevlex.
    """
    u = weights.u if hasattr(weights, "u") else tuple(weights)
    if all(w == 0 for w in u):
        return Ideal(ideal.names, ideal.gens)
    gb = ideal.groebner(weight_refined(u))
    return Ideal(ideal.names, [initial_form(g, u) for g in gb.generators])


def eliminate(ideal: Ideal, keep: Sequence) -> Ideal:
    """``ideal`` intersected with the subring in the coordinates ``keep``.

    ``keep`` holds coordinate names or indices.  The result lives in the same
    ambient ring; its generators only involve kept coordinates.
    """
    keep_idx = {ideal.names.index(k) if isinstance(k, str) else k for k in keep}
    if keep_idx >= set(range(ideal.nvars)):
        return Ideal(ideal.names, ideal.gens)
    elim_weights = tuple(0 if i in keep_idx else 1 for i in range(ideal.nvars))
    gb = ideal.groebner(weight_refined(elim_weights))
    kept = [g for g in gb.generators if g.variables_used() <= keep_idx]
    return Ideal(ideal.names, kept)


def sum_ideal(a: Ideal, extra: Sequence[MultiPoly]) -> Ideal:
    return Ideal(a.names, list(a.gens) + list(extra))


def kernel_ideal(target_names: Sequence[str], source_names: Sequence[str], images: Sequence[MultiPoly]) -> Ideal:
    """Kernel of ``Q[target] -> Q[source]`` sending the i-th target coordinate to ``images[i]``.

    Built from the graph ideal ``(T_i - f_i)`` in ``Q[source, target]`` by
    eliminating the source coordinates, then restricted back to the target ring.
    """
    ns, nt = len(source_names), len(target_names)
    if len(images) != nt:
        raise ValueError("one image polynomial per target coordinate")
    names = tuple(source_names) + tuple(target_names)
    graph = []
    for i, f in enumerate(images):
        if f.nvars != ns:
            raise ValueError("image polynomials must live in the source ring")
        lifted = MultiPoly(ns + nt, {m + (0,) * nt: c for m, c in f.terms.items()})
        graph.append(MultiPoly.variable(ns + nt, ns + i) - lifted)
    elim = eliminate(Ideal(names, graph), range(ns, ns + nt))
    gens = [MultiPoly(nt, {m[ns:]: c for m, c in g.terms.items()}) for g in elim.gens]
    return Ideal(target_names, gens)


def coordinate_ideal(names: Sequence[str], indices) -> list:
    return [MultiPoly.variable(len(names), i) for i in indices]


def is_base_point_free(ideal: Ideal, w_coords: Sequence) -> tuple:
    """Decide whether the coordinates ``w_coords`` have no common zero on V(ideal).

    Returns ``(flag, witness)``; the witness is the name of a coordinate none
    of whose powers enters the leading-term ideal of ``ideal + (W)``, or
    ``None`` when the linear system is base-point free.
    """
    from .hilbert import WeightedHilbertSeries

    idx = [ideal.names.index(k) if isinstance(k, str) else k for k in w_coords]
    if not idx:
        raise ValueError("the linear system must contain at least one coordinate")
    total = sum_ideal(ideal, coordinate_ideal(ideal.names, idx))
    gb = total.groebner(GREVLEX)
    series = WeightedHilbertSeries.from_leading_monomials(gb.leading_monomials, (0,) * ideal.nvars)
    if series.krull_dimension() == 0:
        return True, None
    pure = set()
    for lm in gb.leading_monomials:
        used = [i for i, e in enumerate(lm) if e]
        if len(used) == 1:
            pure.add(used[0])
    for i in range(ideal.nvars):
        if i not in pure:
            return False, ideal.names[i]
    raise AssertionError("positive-dimensional quotient with every pure power present")
