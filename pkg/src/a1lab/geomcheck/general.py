"""Seeded choice of "general" interior points.

A point is drawn at random on X(F_q) and re-drawn until the open conditions
of the operation at hand hold, at most 64 times.  When a field is too small
to offer such points the search escalates to F_{q^2}, F_{q^3}, ... within the
supported extension degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..cipair import CIPair, line_in_variety
from ..errors import A1LabError, DegenerateInputError, TooLargeError, UnsupportedError
from ..exactalg.fields import FieldSpec, extension_of
from ..exactalg.linalg import jacobian_rank_at, rank
from ..exactalg.poly import evaluate
from .enumerate import child_rng, sample_points, smoothness_probe
from .report import FAIL

RETRY_CAP = 64
MAX_EXTENSION = 4
PROBE_CAP = 10**5


@dataclass(frozen=True)
class GeneralChoice:
    points: tuple[tuple, ...]
    field: FieldSpec
    attempts: int
    escalated: bool


def _interior_smooth(P: CIPair, x) -> bool:
    return evaluate(P.G, x) != 0 and jacobian_rank_at(list(P.F), x) == P.c


def _probe_ok(pres) -> bool:
    """No Jacobian rank drop at the F_q-points of a presentation (when enumerable)."""
    try:
        probe = smoothness_probe(pres, len(pres.equations), cap=PROBE_CAP)
    except TooLargeError:
        return True
    return probe.verdict != FAIL


def _draw(P: CIPair, field, rng, count):
    return sample_points(list(P.F), field, count, rng, max_slices=32)


def general_points(pair: CIPair, field: FieldSpec | None = None, *, count: int = 1, seed: int = 0,
                   accept: Callable[[CIPair, tuple], bool] | None = None, label: str = "point",
                   escalate: bool = True) -> GeneralChoice:
    """``count`` interior points of X (a point tuple, all accepted together).

    ``accept(pair_over_field, points)`` is the operation-specific open
    condition; it may raise an A1LabError, which counts as a rejection.
    """
    base = field or pair.field
    if not base.is_finite:
        raise UnsupportedError("general points are drawn over finite fields")
    fields = [base]
    if escalate:
        for s in range(2, MAX_EXTENSION + 1):
            if base.degree * s > MAX_EXTENSION:
                break
            fields.append(extension_of(base, s))
    attempts = 0
    for level, F in enumerate(fields):
        P = pair.over(F)
        rng = child_rng(seed, "general", label, str(F))
        for _ in range(RETRY_CAP):
            attempts += 1
            pool = [x for x in _draw(P, F, rng, 4 * count) if _interior_smooth(P, x)]
            if len(pool) < count:
                continue
            pts = tuple(rng.sample(pool, count))
            if count > 1 and rank(F, [list(x) for x in pts]) < count:
                continue
            try:
                if accept is not None and not accept(P, pts):
                    continue
            except A1LabError:
                continue
            return GeneralChoice(pts, F, attempts, level > 0)
    raise DegenerateInputError(f"no general {label} on {pair.type} after {attempts} draws")


def general_point(pair: CIPair, field: FieldSpec | None = None, *, seed: int = 0, accept=None,
                  escalate: bool = True) -> GeneralChoice:
    """One general interior point; by default the line system through it is smooth at its F_q-points."""
    from ..moduli import line_moduli_through_point

    def default(P, pts):
        pres = line_moduli_through_point(P, pts[0])
        return not pres.redundancy_log and _probe_ok(pres)

    return general_points(pair, field, count=1, seed=seed, accept=accept or default, label="x",
                          escalate=escalate)


def general_point_pair(pair: CIPair, field: FieldSpec | None = None, *, seed: int = 0,
                       escalate: bool = True) -> GeneralChoice:
    """Two general interior points p, q: line pq not in X, node system smooth at its F_q-points."""
    from ..moduli import conic_boundary_locus

    def accept(P, pts):
        p, q = pts
        if line_in_variety(P, p, q):
            return False
        delta = conic_boundary_locus(P, p, q)
        return _probe_ok(delta)

    return general_points(pair, field, count=2, seed=seed, accept=accept, label="pq",
                          escalate=escalate)
