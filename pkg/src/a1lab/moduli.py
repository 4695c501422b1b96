"""Equation systems for A^1-lines through a point and for the node locus of
reducible A^1-conics through two points, plus type/degree bookkeeping.

All presentations live in the P^n of the pair: a point r of the solution set
is the boundary point of the line joining the base point x to r.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .cipair import CIPair, PairType, line_in_variety
from .errors import (ConsistencyError, DegenerateInputError, InputError, PreconditionError,
                     UnsupportedError)
from .exactalg.fields import FieldSpec
from .exactalg.frames import PointFrame
from .exactalg.linalg import rank
from .exactalg.literals import point_to_literal, poly_to_literal
from .exactalg.poly import MultiPoly, evaluate, restrict_to_line


@dataclass(frozen=True)
class Redundancy:
    kept: int
    dropped: str
    reason: str

    def to_json(self) -> dict:
        return {"kept": self.kept, "dropped": self.dropped, "reason": self.reason}


@dataclass(frozen=True)
class ModuliPresentation:
    """A system of homogeneous equations in P^ambient_dim with its declared CI type."""

    ambient_dim: int
    equations: tuple[MultiPoly, ...]
    declared_type: tuple[int, ...]
    expected_dim: int
    field: FieldSpec
    labels: tuple[str, ...] = ()
    redundancy_log: tuple[Redundancy, ...] = ()
    base_points: tuple[tuple, ...] = ()

    def __post_init__(self):
        if tuple(f.degree for f in self.equations) != tuple(self.declared_type):
            raise ConsistencyError("equation degrees differ from the declared type")
        if self.expected_dim != self.ambient_dim - len(self.equations):
            raise ConsistencyError("expected dimension is not ambient_dim - #equations")
        if self.labels and len(self.labels) != len(self.equations):
            raise ConsistencyError("one label per equation")
        for i, f in enumerate(self.equations):
            for g in self.equations[:i]:
                if f.is_scalar_multiple_of(g):
                    raise ConsistencyError("presentation holds two proportional equations")

    @property
    def nvars(self) -> int:
        return self.ambient_dim + 1

    @property
    def generically_empty(self) -> bool:
        return self.expected_dim < 0

    @property
    def degree_product(self) -> int:
        out = 1
        for d in self.declared_type:
            out *= d
        return out

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "declared_type": list(self.declared_type),
            "expected_dim": self.expected_dim,
            "generically_empty": self.generically_empty,
            "field": self.field.to_json(),
            "labels": list(self.labels),
            "equations": [poly_to_literal(f) for f in self.equations],
            "redundancy_log": [r.to_json() for r in self.redundancy_log],
            "base_points": [point_to_literal(self.field, p) for p in self.base_points],
        }


def _pair_type(pair) -> PairType:
    return pair.type if isinstance(pair, CIPair) else pair


def expected_dimension_lines(pair: CIPair | PairType) -> int:
    t = _pair_type(pair)
    return t.n - t.d


def _check_interior(pair: CIPair, x) -> tuple:
    if len(x) != pair.nvars:
        raise InputError(f"point has {len(x)} coordinates, expected {pair.nvars}")
    pt = tuple(pair.field.coerce(v) for v in x)
    if all(v == 0 for v in pt):
        raise InputError("the zero vector is not a projective point")
    for i, f in enumerate(pair.F):
        if evaluate(f, pt) != 0:
            raise PreconditionError(f"point is not on X (F{i + 1} does not vanish)")
    if evaluate(pair.G, pt) == 0:
        raise PreconditionError("point lies on the boundary D (G vanishes), not in the interior")
    return pt


def _line_system(pair: CIPair, x, *, original_coords: bool, pivot: int | None):
    """Raw (label, equation) list for the lines through x, plus the frame."""
    frame = PointFrame(pair.field, x, pivot)
    out: list[tuple[str, MultiPoly]] = []
    for i, f in enumerate(pair.F, start=1):
        f_frame = frame.to_frame(f)
        coeffs = restrict_to_line(f_frame).coefficients
        if coeffs[0] != 0:
            raise ConsistencyError(f"P{i},0 = F{i}(x) is nonzero for a point of X")
        if coeffs[-1] != f_frame:
            raise ConsistencyError("top line coefficient differs from the polynomial")
        for j in range(1, len(coeffs)):
            out.append((f"P{i},{j}", coeffs[j]))
    g_frame = frame.to_frame(pair.G)
    qs = restrict_to_line(g_frame).coefficients
    if qs[0] == 0:
        raise ConsistencyError("Q0 = G(x) vanishes for an interior point")
    if qs[-1] != g_frame:
        raise ConsistencyError("Q_k differs from the transformed G")
    for j in range(1, len(qs)):
        out.append((f"Q{j}", qs[j]))
    if original_coords:
        out = [(lab, frame.from_frame(g)) for lab, g in out]
        if out[-1][1] != pair.G:
            raise ConsistencyError("Q_k does not map back to G")
    for lab, g in out:
        if g.is_zero():
            raise PreconditionError(f"{lab} vanishes identically: X is singular at the base point")
    return out, frame


def _dedup(entries: Sequence[tuple[str, MultiPoly]], prefix: str = ""):
    kept: list[tuple[str, MultiPoly]] = []
    log: list[Redundancy] = []
    for lab, g in entries:
        hit = next((idx for idx, (_, h) in enumerate(kept) if g.is_scalar_multiple_of(h)), None)
        if hit is None:
            kept.append((lab, g))
        else:
            log.append(Redundancy(hit, prefix + lab, f"scalar multiple of {kept[hit][0]}"))
    return kept, log


def line_moduli_through_point(pair: CIPair, x: Sequence, *, original_coords: bool = True,
                              pivot: int | None = None) -> ModuliPresentation:
    """Equations P_{i,1..d_i}, Q_{1..k} of the boundary points of A^1-lines through x.

    Declared type (1..d_1, ..., 1..d_c, 1..k), expected dimension n - d.  With
    ``original_coords=False`` the equations stay in the frame where x = [1:0:...:0].
    """
    pt = _check_interior(pair, x)
    raw, frame = _line_system(pair, pt, original_coords=original_coords, pivot=pivot)
    kept, log = _dedup(raw)
    base = pt if original_coords else tuple(pair.field.one if i == 0 else pair.field.zero
                                            for i in range(pair.nvars))
    return ModuliPresentation(
        ambient_dim=pair.n,
        equations=tuple(g for _, g in kept),
        declared_type=tuple(g.degree for _, g in kept),
        expected_dim=pair.n - len(kept),
        field=pair.field,
        labels=tuple(lab for lab, _ in kept),
        redundancy_log=tuple(log),
        base_points=(base,),
    )


def conic_boundary_locus(pair: CIPair, p: Sequence, q: Sequence) -> ModuliPresentation:
    """Node locus of reducible A^1-conics through p and q (boundary type k = 1).

    Union of the line systems through p and through q; the top equations F_i
    and the boundary equation G appear on both sides and are kept once.
    Type per i: 1,1,2,2,...,d_i-1,d_i-1,d_i, then a final 1.
    """
    if pair.k != 1:
        raise UnsupportedError(f"the node locus needs boundary degree k = 1, got k = {pair.k}")
    pp = _check_interior(pair, p)
    qq = _check_interior(pair, q)
    if PointFrame(pair.field, pp).pull_point(qq)[1:] == [pair.field.zero] * pair.n:
        raise InputError("p and q are the same projective point")
    if line_in_variety(pair, pp, qq):
        raise DegenerateInputError("the line through p and q lies in X")
    side_p, _ = _line_system(pair, pp, original_coords=True, pivot=None)
    side_q, _ = _line_system(pair, qq, original_coords=True, pivot=None)
    by_p = dict(side_p)
    by_q = dict(side_q)
    entries: list[tuple[str, MultiPoly]] = []
    log: list[Redundancy] = []
    for i, d in enumerate(pair.degrees, start=1):
        for j in range(1, d):
            entries.append((f"p:P{i},{j}", by_p[f"P{i},{j}"]))
            entries.append((f"q:P{i},{j}", by_q[f"P{i},{j}"]))
        top = f"P{i},{d}"
        if not by_q[top].is_scalar_multiple_of(by_p[top]):
            raise ConsistencyError(f"{top} differs between the two sides")
        entries.append((f"p:{top}", by_p[top]))
        log.append(Redundancy(len(entries) - 1, f"q:{top}", f"both sides equal F{i}"))
    if not by_q["Q1"].is_scalar_multiple_of(by_p["Q1"]):
        raise ConsistencyError("Q1 differs between the two sides")
    entries.append(("p:Q1", by_p["Q1"]))
    log.append(Redundancy(len(entries) - 1, "q:Q1", "both sides equal G"))
    kept, extra = _dedup(entries)
    if extra:
        raise DegenerateInputError(
            "p and q are not general: " + ", ".join(f"{r.dropped} is a {r.reason}" for r in extra)
        )
    return ModuliPresentation(
        ambient_dim=pair.n,
        equations=tuple(g for _, g in kept),
        declared_type=tuple(g.degree for _, g in kept),
        expected_dim=pair.n - len(kept),
        field=pair.field,
        labels=tuple(lab for lab, _ in kept),
        redundancy_log=tuple(log),
        base_points=(pp, qq),
    )


def delta_type(pair: CIPair | PairType) -> tuple[int, ...]:
    t = _pair_type(pair)
    out: list[int] = []
    for d in t.degrees:
        for j in range(1, d):
            out += [j, j]
        out.append(d)
    return tuple(out) + (1,)


@dataclass(frozen=True)
class ConicFiberType:
    declared_type: tuple[int, ...]
    degree_sum: int
    n: int

    @property
    def rationally_connected_bound(self) -> bool:
        return self.degree_sum <= self.n

    def to_json(self) -> dict:
        return {
            "declared_type": list(self.declared_type),
            "degree_sum": self.degree_sum,
            "rationally_connected_bound": self.rationally_connected_bound,
        }


def conic_fiber_type(pair: CIPair | PairType) -> ConicFiberType:
    """Type of the general two-point A^1-conic fiber: the node-locus type without its final 1."""
    t = _pair_type(pair)
    if t.k != 1:
        raise UnsupportedError(f"conic fibers need boundary degree k = 1, got k = {t.k}")
    ty = delta_type(t)[:-1]
    return ConicFiberType(ty, sum(ty), t.n)


@dataclass(frozen=True)
class DeltaDegreeMetadata:
    delta_prime_degree: int = 2
    delta_degree: int = 1
    pullback_multiplicity: int = 2

    def __post_init__(self):
        if self.delta_prime_degree != self.pullback_multiplicity * self.delta_degree:
            raise ConsistencyError("degree of the stable-map locus must be multiplicity x degree")

    def to_json(self) -> dict:
        return {
            "delta_prime_degree": self.delta_prime_degree,
            "delta_degree": self.delta_degree,
            "pullback_multiplicity": self.pullback_multiplicity,
        }


def delta_degree_metadata(pair: CIPair | PairType) -> DeltaDegreeMetadata:
    """Constant degrees of the reducible-conic divisors (quadric vs hyperplane class)."""
    t = _pair_type(pair)
    if t.k != 1:
        raise UnsupportedError("degree metadata is defined for boundary degree k = 1")
    return DeltaDegreeMetadata()


# -- plane conics through p = [0:1:0], q = [0:0:1] -----------------------------

CONTAINS_LINE_PQ = "contains-line-pq"
REDUCIBLE = "reducible"
IRREDUCIBLE = "irreducible"


@dataclass(frozen=True)
class ConicCoefficients:
    """The conic a1 x^2 + a2 xy + a3 xz + a4 yz = 0 in the plane with coordinates x, y, z."""

    a1: object
    a2: object
    a3: object
    a4: object
    field: FieldSpec = dc_field(compare=False)

    def __post_init__(self):
        F = self.field
        vals = [F.coerce(v) for v in (self.a1, self.a2, self.a3, self.a4)]
        for name, v in zip(("a1", "a2", "a3", "a4"), vals):
            object.__setattr__(self, name, v)
        if all(v == 0 for v in vals):
            raise InputError("all conic coefficients vanish")

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4)

    def gram_matrix(self) -> list[list]:
        """Symmetric matrix M with form(v) = v^T M v (needs 2 invertible)."""
        F = self.field
        if F.characteristic == 2:
            raise UnsupportedError("Gram matrices need characteristic != 2")
        h = F.inv(F.from_int(2))
        a1, a2, a3, a4 = self.coefficients
        z = F.zero
        return [
            [a1, F.mul(a2, h), F.mul(a3, h)],
            [F.mul(a2, h), z, F.mul(a4, h)],
            [F.mul(a3, h), F.mul(a4, h), z],
        ]

    def as_poly(self) -> MultiPoly:
        F = self.field
        a1, a2, a3, a4 = self.coefficients
        return MultiPoly(F, 3, {(2, 0, 0): a1, (1, 1, 0): a2, (1, 0, 1): a3, (0, 1, 1): a4})


def conic_reducibility(c: ConicCoefficients) -> str:
    """``contains-line-pq`` iff a4 = 0, else ``reducible`` iff the Gram matrix is singular."""
    m = c.gram_matrix()
    if c.a4 == 0:
        return CONTAINS_LINE_PQ
    return REDUCIBLE if rank(c.field, m) <= 2 else IRREDUCIBLE


def printed_condition(c: ConicCoefficients, sign: int) -> bool:
    """``a4 = 0`` or ``a1 a4 + sign * a2 a3 = 0``; used to test both sign readings."""
    F = c.field
    a1, a2, a3, a4 = c.coefficients
    term = F.mul(a2, a3)
    if sign < 0:
        term = F.neg(term)
    return a4 == 0 or F.add(F.mul(a1, a4), term) == 0
