"""Chow weights, the Donaldson-Futaki coefficient and the refined invariant.

Sign and normalization conventions: the induced action on the degree-l
piece has weights ``-b`` on a standard monomial of weighted degree ``b``;
after trace normalization the weight becomes ``-(b - gamma_l)``.  The Chow
weight ``q_l`` is ``(n+1)!`` times the ``k^(n+1)`` coefficient of

    e_l(k) = B_{lk} - k * gamma_l * N_{lk},

the total trace-normalized weight on the degree ``lk`` piece.  On the
cuspidal-cubic example this reproduces ``q_l = -(n+1)! gamma_l a_n l^n``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial

from .degeneration import (
    AsymptoticModel,
    DegreeProfile,
    TestConfiguration,
    series_profile_counts,
)
from .exact import (
    InterpolationError,
    LimitClass,
    RationalFunction,
    UniPoly,
    expansion_at_infinity,
    expansion_coefficients,
    interpolate_poly,
    limit_at_infinity,
)

log = logging.getLogger(__name__)


class InvariantError(ValueError):
    pass


class FitError(RuntimeError):
    """The k-sweep did not produce a polynomial of the expected degree."""


@dataclass(frozen=True)
class ChowFit:
    ell: int
    points: tuple  # ((k, e_l(k)), ...)
    poly: UniPoly
    q: Fraction
    kmax: int


def minimal_kmax(model: AsymptoticModel, ell: int) -> int:
    return ceil(model.m0 / ell) + model.n + 3


def chow_weight_sweep(config: TestConfiguration, model: AsymptoticModel, ell: int,
                      kmax: int | None = None, gamma: Fraction | None = None) -> ChowFit:
    """Chow weight of the degree-``ell`` embedding by sampling ``k`` and fitting.

    Per-degree counts come from the bigraded series, not from the stable
    polynomials, so this path is independent of :func:`chow_weight_symbolic`.
    """
    n = model.n
    need = minimal_kmax(model, ell)
    kmax = need if kmax is None else kmax
    if kmax < need:
        raise ValueError(f"kmax must be at least {need} for degree {ell}")
    if gamma is None:
        N_l, _, B_l = series_profile_counts(config, ell)
        gamma = Fraction(B_l, N_l)

    def sample(k):
        N, _, B = series_profile_counts(config, ell * k)
        return (k, B - k * gamma * N)

    k0 = ceil(model.m0 / ell)
    for attempt in range(2):
        pts = [sample(k) for k in range(k0, kmax + 1)]
        try:
            poly = interpolate_poly(pts, n + 1)
            break
        except InterpolationError as exc:
            if attempt:
                raise FitError(f"k-sweep for degree {ell} is not polynomial up to k={kmax}: {exc}") from exc
            log.warning("k-sweep fit failed at degree %d, raising kmax", ell)
            k0, kmax = k0 + n + 2, kmax + n + 2
    q = factorial(n + 1) * poly.coeff(n + 1)
    return ChowFit(ell, tuple(pts), poly, q, kmax)


def chow_weight_symbolic(model: AsymptoticModel) -> RationalFunction:
    """Chow weight as an exact rational function of the degree.

    The ``k^j`` coefficient of ``P(l k)`` is ``p_j l^j``, so
    ``q(l) = (n+1)! [ b_{n+1} l^{n+1} - (B(l)/N(l)) a_n l^n ]``.
    """
    n = model.n
    lead_B = UniPoly.monomial(n + 1, model.B_poly.coeff(n + 1))
    gamma = RationalFunction(model.B_poly, model.N_poly)
    lead_N = UniPoly.monomial(n, model.N_poly.coeff(n))
    return (RationalFunction(lead_B) - gamma * lead_N) * factorial(n + 1)


@dataclass(frozen=True)
class FutakiCoefficients:
    df1: Fraction
    higher: tuple  # (F2, F3, ...)
    normalized_q: RationalFunction
    donaldson_coefficient: Fraction


def donaldson_diagnostic(model: AsymptoticModel) -> Fraction:
    """``l^-1`` coefficient of ``-B(l)/(l N(l))``."""
    f = RationalFunction(-model.B_poly, model.N_poly * UniPoly.x())
    return expansion_coefficients(f, -1).get(-1, Fraction(0))


def donaldson_futaki(model: AsymptoticModel, q: RationalFunction, count: int = 3) -> FutakiCoefficients:
    """Leading coefficient of ``q(l) / ((n+1)! c1^n l^n)`` and the next ones.

    The coefficients after the first are the asymptotic expansion of our
    exact ``q``; they are reported as expansion coefficients only.
    """
    n = model.n
    scale = factorial(n + 1) * model.intersection_number
    g = RationalFunction.coerce(q) / scale
    lim = limit_at_infinity(g / UniPoly.monomial(n))
    if lim.kind != "finite":
        raise InvariantError(f"q(l)/l^n does not converge ({lim})")
    coeffs = expansion_coefficients(g, n - count + 1)
    higher = tuple(coeffs.get(n - i, Fraction(0)) for i in range(1, count))
    return FutakiCoefficients(lim.value, higher, g, donaldson_diagnostic(model))


# --- refined invariant -------------------------------------------------------


def _cauchy_bound(p: UniPoly) -> Fraction:
    if p.degree <= 0:
        return Fraction(0)
    lc = p.leading
    return 1 + max(abs(c / lc) for c in p.coeffs[:-1])


def eventual_threshold(polys_nonneg, polys_pos, start: int) -> int | None:
    """Least ``t >= start`` with every ``p`` in ``polys_nonneg`` >= 0 and every
    ``p`` in ``polys_pos`` > 0 at all integers ``>= t``; ``None`` if no such ``t``.

    Past the Cauchy root bound each polynomial has the sign of its leading
    coefficient, so only finitely many integers need checking.
    """
    for p in polys_nonneg:
        if p.leading < 0:
            return None
    for p in polys_pos:
        if p.is_zero() or p.leading < 0:
            return None
    bound = max([_cauchy_bound(p) for p in list(polys_nonneg) + list(polys_pos)] + [Fraction(start)])
    t = ceil(bound) + 1
    while t > start:
        ell = t - 1
        if all(p(ell) >= 0 for p in polys_nonneg) and all(p(ell) > 0 for p in polys_pos):
            t = ell
        else:
            break
    return t


@dataclass
class RefinedSequence:
    values: dict  # ell -> s_ell (None where the norm vanishes)
    closed_form: RationalFunction | None
    norm_closed_form: RationalFunction | None
    valid_from: int | None
    reason: str = ""


def refined_sequence(config: TestConfiguration, model: AsymptoticModel, q: RationalFunction,
                     profiles: list) -> RefinedSequence:
    """Renormalized Chow weights ``s_l = l q_l / ||psi_l||``.

    Per-degree values use each profile's own ``q`` and ``norm``.  The closed
    form ``||psi||(l) = 2 B(l) n(l) / N(l)`` needs every positive weight to be
    at least ``gamma_l``; this is certified from the stable polynomials
    (``gamma(l) <= smallest positive coordinate weight`` for all large ``l``),
    otherwise only per-degree values are returned.
    """
    if all(p.norm == 0 for p in profiles) or model.B_poly.is_zero():
        raise InvariantError("trivial action: ||psi_l|| vanishes, the refined invariant is undefined")
    values = {}
    for p in profiles:
        if p.q is None:
            raise ValueError(f"profile for degree {p.ell} has no Chow weight")
        p.s = None if p.norm == 0 else Fraction(p.ell) * p.q / p.norm
        values[p.ell] = p.s

    umin = config.weights.min_positive_weight
    t = eventual_threshold(
        [model.N_poly * umin - model.B_poly],
        [model.N_poly, model.B_poly, model.n_poly],
        model.m0,
    )
    if t is None:
        return RefinedSequence(values, None, None, None,
                               "gamma(l) is not eventually below the smallest positive weight")
    norm = RationalFunction(model.B_poly * model.n_poly * 2, model.N_poly)
    s = RationalFunction(UniPoly.x()) * q / norm
    return RefinedSequence(values, s, norm, t)


@dataclass(frozen=True)
class F1Class:
    limit: LimitClass | None  # None means inconclusive
    method: str  # "exact" | "heuristic"

    def __str__(self):
        return "inconclusive" if self.limit is None else str(self.limit)


def classify_F1(s) -> F1Class:
    """Limit class of the refined sequence.

    A :class:`RationalFunction` is classified exactly.  A mapping or list of
    ``(l, s_l)`` pairs (at least six) gets a heuristic growth classification.
    """
    if isinstance(s, (RationalFunction, UniPoly, int, Fraction)):
        return F1Class(limit_at_infinity(s), "exact")
    pts = sorted(s.items() if isinstance(s, dict) else s)
    pts = [(ell, v) for ell, v in pts if v is not None]
    if len(pts) < 6:
        raise ValueError("need at least six values for a heuristic classification")
    vals = [Fraction(v) for _, v in pts]
    diffs = [b - a for a, b in zip(vals, vals[1:])][-5:]
    if all(d == 0 for d in diffs):
        return F1Class(LimitClass.finite(vals[-1]), "heuristic")
    if all(d < 0 for d in diffs) or all(d > 0 for d in diffs):
        mags = [abs(d) for d in diffs]
        if min(mags) * 2 >= max(mags) and mags[-1] * 2 >= mags[0]:
            return F1Class(LimitClass("minus_infinity" if diffs[0] < 0 else "plus_infinity"), "heuristic")
    return F1Class(None, "heuristic")


# --- full pipeline -----------------------------------------------------------


@dataclass
class InvariantReport:
    model: AsymptoticModel
    profiles: list
    q_function: RationalFunction
    futaki: FutakiCoefficients
    refined: RefinedSequence
    f1: F1Class
    fits: dict = field(default_factory=dict)

    @property
    def df1(self) -> Fraction:
        return self.futaki.df1


def compute_invariants(config: TestConfiguration, model: AsymptoticModel, profiles: list,
                       kmax: int | None = None) -> InvariantReport:
    """Fill ``q`` and ``s`` into ``profiles`` and assemble every invariant."""
    q_fn = chow_weight_symbolic(model)
    fits = {}
    for p in profiles:
        need = minimal_kmax(model, p.ell)
        fit = chow_weight_sweep(config, model, p.ell, max(kmax or need, need), gamma=p.gamma)
        p.q = fit.q
        fits[p.ell] = fit
        if p.ell >= model.m0 and q_fn(p.ell) != fit.q:
            raise AssertionError(f"sweep and symbolic Chow weights differ at degree {p.ell}")
    futaki = donaldson_futaki(model, q_fn)
    refined = refined_sequence(config, model, q_fn, profiles)
    if refined.closed_form is not None:
        for ell, v in refined.values.items():
            if ell >= refined.valid_from and v is not None and refined.closed_form(ell) != v:
                raise AssertionError(f"closed-form s(l) disagrees with the sweep at degree {ell}")
        f1 = classify_F1(refined.closed_form)
    else:
        f1 = classify_F1(refined.values)
    return InvariantReport(model, profiles, q_fn, futaki, refined, f1, fits)


def profiles_bound_check(profiles: list, max_weight: int) -> list:
    """Degrees where a positive weight leaves ``(0, C0 * l]``."""
    bad = []
    for p in profiles:
        for w, _ in p.weights:
            if w < 0 or w > max_weight * p.ell:
                bad.append(p.ell)
                break
    return bad


def norm_bounds_hold(p: DegreeProfile) -> bool:
    """``gamma n <= ||psi|| <= 2 gamma N`` for one profile."""
    return p.gamma * p.n <= p.norm <= 2 * p.gamma * p.N
