"""Finite-field verification: enumeration, slicing, smoothness probes and oracles."""

from .enumerate import (
    HARD_CAP,
    canonical_key,
    child_rng,
    dimension_by_slicing,
    enumerate_solutions,
    is_nonempty,
    sample_points,
    slice_votes,
    smoothness_probe,
)
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .vecfield import projective_size, vec_field
from .oracles import ConicOracleResult, oracle_a1_conics, oracle_a1_lines  # noqa: E402
from .general import GeneralChoice, general_point, general_point_pair, general_points  # noqa: E402

__all__ = [
    "FAIL",
    "HARD_CAP",
    "INCONCLUSIVE",
    "PASS",
    "CheckReport",
    "ConicOracleResult",
    "GeneralChoice",
    "canonical_key",
    "child_rng",
    "dimension_by_slicing",
    "enumerate_solutions",
    "general_point",
    "general_point_pair",
    "general_points",
    "is_nonempty",
    "oracle_a1_conics",
    "oracle_a1_lines",
    "projective_size",
    "sample_points",
    "slice_votes",
    "smoothness_probe",
    "vec_field",
]
