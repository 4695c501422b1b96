"""JSON literal formats for polynomials and points.

A polynomial is a JSON array of terms ``[coeff, [e0, ..., en]]``.  The
coefficient is a decimal string (``"a/b"`` allowed over Q) or, over F_{p^r},
a list of r residues ``c_0 .. c_{r-1}`` meaning ``c_0 + c_1 a + ...``.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import InputError
from .fields import FieldSpec
from .poly import MultiPoly


def poly_to_literal(f: MultiPoly) -> list:
    return [[f.field.to_literal(c), list(e)] for e, c in f.terms()]


def poly_from_literal(obj, field: FieldSpec, nvars: int | None = None) -> MultiPoly:
    if not isinstance(obj, list):
        raise InputError("polynomial literal must be a JSON array of terms")
    terms = []
    for i, term in enumerate(obj):
        if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], list)):
            raise InputError(f"term {i}: expected [coeff, [exponents]]")
        coeff, exps = term
        if not all(isinstance(k, int) and not isinstance(k, bool) for k in exps):
            raise InputError(f"term {i}: exponents must be integers")
        if nvars is None:
            nvars = len(exps)
        elif len(exps) != nvars:
            raise InputError(f"term {i}: expected {nvars} exponents, got {len(exps)}")
        try:
            terms.append((tuple(exps), field.from_literal(coeff)))
        except InputError as exc:
            raise InputError(f"term {i}: {exc}") from exc
    if nvars is None:
        raise InputError("cannot infer the number of variables of an empty literal")
    return MultiPoly(field, nvars, terms)


def normalize_point(field: FieldSpec, point: Sequence) -> tuple:
    """Projective representative with first nonzero coordinate equal to 1."""
    pt = [field.coerce(v) for v in point]
    lead = next((v for v in pt if v != 0), None)
    if lead is None:
        raise InputError("the zero vector is not a projective point")
    if lead == field.one:
        return tuple(pt)
    inv = field.inv(lead)
    return tuple(field.mul(v, inv) for v in pt)


def point_to_literal(field: FieldSpec, point: Sequence) -> list:
    return [field.to_literal(v) for v in point]


def point_from_literal(field: FieldSpec, obj) -> tuple:
    if not isinstance(obj, list):
        raise InputError("point literal must be a JSON array")
    return tuple(field.from_literal(v) for v in obj)


def parse_point_text(field: FieldSpec, text: str) -> tuple:
    """CLI form ``c0,...,cn``; over F_{p^r} a coordinate may be ``a:b`` (residues low -> high)."""
    coords = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise InputError(f"empty coordinate in {text!r}")
        if ":" in part:
            coords.append(field.from_literal(part.split(":")))
        else:
            coords.append(field.from_literal(part))
    return tuple(coords)
