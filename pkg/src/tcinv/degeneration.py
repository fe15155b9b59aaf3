"""Test configurations from a split linear system and their per-degree weight data."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .exact import InterpolationError, UniPoly, interpolate_poly
from .groebner import (
    DEFAULT_DEGREE_CAP,
    Ideal,
    coordinate_ideal,
    eliminate,
    initial_ideal,
    is_base_point_free,
    normal_form,
    sum_ideal,
)
from .hilbert import WeightedHilbertSeries, leading_coefficient
from .polyring import (
    GREVLEX,
    MultiPoly,
    WeightAssignment,
    format_poly,
    mono_divides,
    monomials_of_degree,
    parse_polynomial,
    u_weight,
    weight_refined,
)

log = logging.getLogger(__name__)


class ConfigurationError(ValueError):
    """Input does not define a test configuration of the required kind."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class TestConfiguration:
    __test__ = False  # not a pytest class

    coordinates: tuple
    ideal: Ideal
    weights: WeightAssignment
    n: int
    central_fiber: Ideal
    fiber_leading_monomials: tuple
    fiber_series: WeightedHilbertSeries
    variety_series: WeightedHilbertSeries
    flat_up_to: int
    diagnostics: dict = field(default_factory=dict)

    @property
    def w_coords(self) -> tuple:
        return tuple(self.coordinates[i] for i in self.weights.w_indices)

    @property
    def w_prime_coords(self) -> tuple:
        return tuple(self.coordinates[i] for i in self.weights.w_prime_indices)

    @property
    def fiber_order(self):
        return weight_refined(self.weights.u)


def build_configuration(
    coordinates: Sequence[str],
    ideal_gens: Sequence,
    w_coords: Sequence[str],
    weights: Mapping[str, int],
    dimension: int | None = None,
    flatness_cap: int = 12,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> TestConfiguration:
    """Validate the input and compute the central fibre.

    ``ideal_gens`` may hold :class:`MultiPoly` values or polynomial strings.
    ``weights`` maps every coordinate outside ``w_coords`` to a positive
    integer weight.
    """
    coordinates = tuple(coordinates)
    if len(set(coordinates)) != len(coordinates):
        raise ConfigurationError("coordinate names must be unique")
    gens = [parse_polynomial(g, coordinates) if isinstance(g, str) else g for g in ideal_gens]
    if not gens:
        raise ConfigurationError("the ideal needs at least one generator")
    for g, text in zip(gens, ideal_gens):
        if g.is_zero():
            raise ConfigurationError(f"generator {text!r} is zero")
        if not g.is_homogeneous():
            raise ConfigurationError(f"generator {text!r} is not homogeneous")

    w_set = set(w_coords)
    if not w_set:
        raise ConfigurationError("W must contain at least one coordinate")
    if w_set - set(coordinates):
        raise ConfigurationError(f"unknown coordinate(s) in W: {sorted(w_set - set(coordinates))}")
    if w_set == set(coordinates):
        raise ConfigurationError("W' is empty: the torus acts trivially")
    try:
        u = WeightAssignment.from_split(coordinates, w_coords, weights)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc

    ideal = Ideal(coordinates, gens)
    free, witness = is_base_point_free(ideal, [coordinates.index(c) for c in coordinates if c in w_set])
    if not free:
        raise ConfigurationError(
            f"W is not base-point free: coordinate {witness} survives on the common zero locus",
            witness=witness,
        )

    variety_series = WeightedHilbertSeries(ideal.groebner(GREVLEX, degree_cap).leading_monomials, u.u)
    n = variety_series.krull_dimension() - 1
    if dimension is not None and dimension != n:
        raise ConfigurationError(f"declared dimension {dimension} but the Hilbert polynomial has degree {n}")
    if n < 0:
        raise ConfigurationError("the ideal defines the empty projective scheme")

    fiber = initial_ideal(ideal, u)
    fiber_gb = fiber.groebner(weight_refined(u.u), degree_cap)
    fiber_series = WeightedHilbertSeries(fiber_gb.leading_monomials, u.u)
    for ell in range(flatness_cap + 1):
        if fiber_series.hilbert_function(ell) != variety_series.hilbert_function(ell):
            raise ConfigurationError(f"degeneration is not flat in degree {ell}")

    diagnostics = _non_isomorphism_diagnostic(ideal, u, variety_series)
    log.info("built configuration: n=%d, central fibre %s", n, fiber.format_gens())
    return TestConfiguration(
        coordinates=coordinates,
        ideal=ideal,
        weights=u,
        n=n,
        central_fiber=fiber,
        fiber_leading_monomials=fiber_gb.leading_monomials,
        fiber_series=fiber_series,
        variety_series=variety_series,
        flat_up_to=flatness_cap,
        diagnostics=diagnostics,
    )


def _image_series(ideal: Ideal, u: WeightAssignment) -> WeightedHilbertSeries:
    """Hilbert series of the image under the W-projection, inside Q[W]."""
    keep = u.w_indices
    image = eliminate(ideal, keep)
    if image.gens:
        lms = Ideal(ideal.names, image.gens).groebner(GREVLEX).leading_monomials
    else:
        lms = ()
    restricted = [tuple(m[i] for i in keep) for m in lms]
    return WeightedHilbertSeries(restricted, (0,) * len(keep))


def _non_isomorphism_diagnostic(ideal, u, variety_series) -> dict:
    image = _image_series(ideal, u)
    lead_x = leading_coefficient(variety_series)
    lead_img = leading_coefficient(image)
    same_dim = image.krull_dimension() == variety_series.krull_dimension()
    if same_dim and lead_img == lead_x:
        status = "unverified assumption"
    else:
        status = "non-isomorphic (certified)"
    return {
        "non_isomorphism": status,
        "image_leading_coefficient": lead_img,
        "variety_leading_coefficient": lead_x,
    }


# --- per-degree data ---------------------------------------------------------


@dataclass
class DegreeProfile:
    ell: int
    N: int
    n: int
    weights: tuple  # sorted ((weight, multiplicity), ...)
    B: int
    gamma: Fraction
    norm: Fraction
    q: Fraction | None = None
    s: Fraction | None = None

    @property
    def normalized_weight_sum(self) -> Fraction:
        """Sum of the trace-free weights ``b - gamma``; zero by construction."""
        return sum((Fraction(w) - self.gamma) * k for w, k in self.weights)


def standard_monomials(config: TestConfiguration, ell: int):
    lms = config.fiber_leading_monomials
    for m in monomials_of_degree(len(config.coordinates), ell):
        if not any(mono_divides(lm, m) for lm in lms):
            yield m


def weight_profile(weight_counts: Mapping[int, int], ell: int) -> DegreeProfile:
    """Profile from a weight histogram ``{b: multiplicity}`` in degree ``ell``."""
    counts = Counter({w: k for w, k in weight_counts.items() if k})
    N = sum(counts.values())
    n0 = counts.get(0, 0)
    B = sum(w * k for w, k in counts.items())
    gamma = Fraction(B, N) if N else Fraction(0)
    norm = sum(abs(Fraction(w) - gamma) * k for w, k in counts.items())
    return DegreeProfile(ell, N, n0, tuple(sorted(counts.items())), B, gamma, Fraction(norm))


def degree_profile(config: TestConfiguration, ell: int) -> DegreeProfile:
    """Enumerate standard monomials of degree ``ell`` and collect their weights."""
    if ell < 1:
        raise ValueError("degree must be >= 1")
    counts = Counter(u_weight(m, config.weights) for m in standard_monomials(config, ell))
    return weight_profile(counts, ell)


def series_profiles(config: TestConfiguration, lmax: int) -> list:
    """Profiles for ``l = 1..lmax`` read off the bigraded series (no enumeration)."""
    dist = config.fiber_series.weight_distribution(lmax)
    return [weight_profile(dist[ell], ell) for ell in range(1, lmax + 1)]


def weighted_hilbert_series(lt_gens, weights) -> WeightedHilbertSeries:
    u = weights.u if isinstance(weights, WeightAssignment) else weights
    return WeightedHilbertSeries(lt_gens, u)


# --- asymptotics -------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticModel:
    n: int
    N_poly: UniPoly
    B_poly: UniPoly
    n_poly: UniPoly
    m0: int
    a_n: Fraction
    intersection_number: Fraction
    b_degree_ok: bool

    @property
    def chi(self) -> UniPoly:
        return self.N_poly


def stable_polynomials(config: TestConfiguration) -> AsymptoticModel:
    """Exact polynomials for N, B and the weight-0 count, valid from ``m0`` on."""
    stab = config.fiber_series.stable_polynomials(start=1)
    N_poly, mN = stab["N"]
    B_poly, mB = stab["B"]
    n_poly, mn = stab["n"]
    m0 = max(mN, mB, mn)
    n = config.n
    if N_poly.degree != n:
        raise AssertionError(f"Hilbert polynomial has degree {N_poly.degree}, expected {n}")
    a_n = N_poly.leading
    ok = B_poly.degree <= n
    if not ok:
        log.warning("weight-sum polynomial has degree %d > n = %d", B_poly.degree, n)
    return AsymptoticModel(n, N_poly, B_poly, n_poly, m0, a_n, factorial(n) * a_n, ok)


# --- structural checks -------------------------------------------------------


@dataclass
class StructuralReport:
    reduced_fiber: str  # PASS / FAIL / INCONCLUSIVE
    reduced_fiber_detail: dict
    growth_degree: int
    growth_bound: int
    growth_21: str  # PASS / FLAG
    growth_poly: UniPoly
    flatness: str
    flatness_checked_up_to: int
    non_isomorphism: str

    def as_dict(self) -> dict:
        return {
            "reduced_fiber": {"status": self.reduced_fiber, **self.reduced_fiber_detail},
            "growth_21": {
                "status": self.growth_21,
                "excess_polynomial": self.growth_poly.format(),
                "degree": self.growth_degree,
                "bound": self.growth_bound,
            },
            "flatness": {"status": self.flatness, "checked_up_to": self.flatness_checked_up_to},
            "non_isomorphism": self.non_isomorphism,
        }


def image_ideal_in_ambient(config: TestConfiguration) -> Ideal:
    """Ideal of the W-image, cut out in the full projective space by adding W'."""
    ideal, u = config.ideal, config.weights
    image = eliminate(ideal, u.w_indices)
    return sum_ideal(image, coordinate_ideal(ideal.names, u.w_prime_indices))


def reduced_fiber_check(config: TestConfiguration, cap: int) -> tuple:
    """Bounded check that the central fibre and the W-image have the same radical.

    Verifies ``I <= J`` on generators of degree at most ``cap`` and finds, for
    every generator ``g`` of ``J``, a power ``g^m`` in ``I`` with ``m <= cap``.
    """
    J = image_ideal_in_ambient(config)
    J_gb = J.groebner(GREVLEX)
    I = config.central_fiber
    I_gb = I.groebner(config.fiber_order)
    names = config.coordinates
    detail = {
        "certification": "bounded",
        "cap": cap,
        "J": [_fmt(g, names) for g in J_gb.generators],
    }
    for g in I.gens:
        if g.total_degree > cap:
            detail["reason"] = f"fibre generator of degree {g.total_degree} exceeds the cap"
            return "INCONCLUSIVE", detail
        if not normal_form(g, J_gb).is_zero():
            detail["reason"] = f"{_fmt(g, names)} is not in J"
            return "FAIL", detail
    powers = {}
    for g in J_gb.generators:
        found = None
        gm = g
        for m in range(1, cap + 1):
            if normal_form(gm, I_gb).is_zero():
                found = m
                break
            gm = gm * g
        if found is None:
            detail["reason"] = f"no power of {_fmt(g, names)} up to {cap} lies in the fibre ideal"
            detail["powers"] = powers
            return "INCONCLUSIVE", detail
        powers[_fmt(g, names)] = found
    detail["powers"] = powers
    return "PASS", detail


def _fmt(p: MultiPoly, names) -> str:
    return format_poly(p, names)


def structural_checks(config: TestConfiguration, cap: int = 12, model: AsymptoticModel | None = None) -> StructuralReport:
    if cap < 2:
        raise ValueError("cap must be at least 2")
    status, detail = reduced_fiber_check(config, cap)

    model = model or stable_polynomials(config)
    start = model.m0
    pts = []
    for ell in range(start, start + config.n + 4):
        prof = series_profile_counts(config, ell)
        pts.append((ell, prof[0] - prof[1]))
    try:
        excess = interpolate_poly(pts, config.n)
    except InterpolationError as exc:  # cannot happen past m0
        raise AssertionError(f"N - n is not polynomial past m0: {exc}") from exc
    if excess != model.N_poly - model.n_poly:
        raise AssertionError("excess polynomial disagrees with the stable polynomials")
    bound = config.n - 1
    growth = "PASS" if excess.degree <= bound else "FLAG"

    flat = all(
        config.fiber_series.hilbert_function(ell) == config.variety_series.hilbert_function(ell)
        for ell in range(1, cap + 1)
    )
    return StructuralReport(
        reduced_fiber=status,
        reduced_fiber_detail=detail,
        growth_degree=excess.degree,
        growth_bound=bound,
        growth_21=growth,
        growth_poly=excess,
        flatness="PASS" if flat else "FAIL",
        flatness_checked_up_to=cap,
        non_isomorphism=config.diagnostics.get("non_isomorphism", "unknown"),
    )


def series_profile_counts(config: TestConfiguration, ell: int) -> tuple:
    """``(N_l, n_l, B_l)`` from the series in closed form."""
    s = config.fiber_series
    return s.hilbert_function(ell), s.zero_weight_count(ell), s.weight_sum(ell)
