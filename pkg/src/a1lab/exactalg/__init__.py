"""Exact field and sparse polynomial arithmetic."""

from .fields import (
    ExtensionField,
    FieldSpec,
    PrimeField,
    RationalField,
    embedding,
    extension_of,
    field_from_json,
    is_irreducible,
    is_prime,
    make_extension,
    parse_field_option,
)
from .linalg import jacobian_rank_at, kernel_basis, rank, row_reduce
from .literals import normalize_point, poly_from_literal, poly_to_literal
from .poly import LineExpansion, MultiPoly, evaluate, random_homogeneous, restrict_to_line

__all__ = [
    "ExtensionField",
    "FieldSpec",
    "LineExpansion",
    "MultiPoly",
    "PrimeField",
    "RationalField",
    "embedding",
    "evaluate",
    "extension_of",
    "field_from_json",
    "is_irreducible",
    "is_prime",
    "jacobian_rank_at",
    "kernel_basis",
    "make_extension",
    "normalize_point",
    "parse_field_option",
    "poly_from_literal",
    "poly_to_literal",
    "random_homogeneous",
    "rank",
    "restrict_to_line",
    "row_reduce",
]
