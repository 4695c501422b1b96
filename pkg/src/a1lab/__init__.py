"""Exact equations for A^1-lines and A^1-conics on complete intersection pairs,
with finite-field brute-force cross-checks."""

from . import exactalg
from .geomcheck.enumerate import enumerate_solutions
from .cipair import (
    CIPair,
    CriteriaReport,
    PairType,
    criteria,
    load_pair,
    random_pair,
    universal_cover,
    validate_pair,
)
from .moduli import (
    ConicCoefficients,
    ModuliPresentation,
    conic_boundary_locus,
    conic_fiber_type,
    conic_reducibility,
    delta_degree_metadata,
    expected_dimension_lines,
    line_moduli_through_point,
)
from . import geomcheck

__version__ = "0.1.0"

__all__ = [
    "CIPair",
    "ConicCoefficients",
    "CriteriaReport",
    "ModuliPresentation",
    "PairType",
    "conic_boundary_locus",
    "conic_fiber_type",
    "conic_reducibility",
    "criteria",
    "delta_degree_metadata",
    "enumerate_solutions",
    "exactalg",
    "expected_dimension_lines",
    "geomcheck",
    "line_moduli_through_point",
    "load_pair",
    "random_pair",
    "universal_cover",
    "validate_pair",
]
