"""Exact invariants of test configurations induced by a split linear system."""

from .degeneration import (
    ConfigurationError,
    TestConfiguration,
    build_configuration,
    degree_profile,
    stable_polynomials,
    structural_checks,
)
from .exact import LimitClass, RationalFunction, UniPoly, expansion_at_infinity, interpolate_poly, limit_at_infinity
from .invariants import (
    chow_weight_sweep,
    chow_weight_symbolic,
    classify_F1,
    compute_invariants,
    donaldson_futaki,
    refined_sequence,
)

__version__ = "0.1.0"
