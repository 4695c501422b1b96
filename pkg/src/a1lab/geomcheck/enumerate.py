"""Exhaustive point enumeration on projective varieties over F_q.

Linear equations are eliminated exactly first: the solutions are searched in
the projective space of their common kernel, so the hard cap applies to the
space that is actually enumerated.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from ..errors import InputError, TooLargeError, UnsupportedError
from ..exactalg.fields import FieldSpec, extension_of
from ..exactalg.linalg import jacobian_matrix, kernel_basis, rank
from ..exactalg.literals import normalize_point
from ..exactalg.poly import MultiPoly
from .report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .vecfield import projective_chunks, projective_size, vec_field

HARD_CAP = 10**7
CHUNK = 1 << 16


def child_rng(seed: int, *labels) -> random.Random:
    """Independent deterministic stream for (seed, labels)."""
    return random.Random(":".join(str(x) for x in (seed,) + labels))


def _unpack(system, field: FieldSpec | None, ambient_dim: int | None):
    equations = getattr(system, "equations", system)
    if ambient_dim is None:
        ambient_dim = getattr(system, "ambient_dim", None)
    equations = list(equations)
    if equations:
        nvars = equations[0].nvars
        if any(f.nvars != nvars for f in equations):
            raise InputError("equations have different numbers of variables")
        if ambient_dim is not None and ambient_dim != nvars - 1:
            raise InputError("ambient dimension does not match the equations")
        if field is None:
            field = equations[0].field
        equations = [f.change_field(field) for f in equations]
    else:
        if ambient_dim is None or field is None:
            raise InputError("an empty system needs ambient_dim and field")
        nvars = ambient_dim + 1
    if not field.is_finite:
        raise UnsupportedError("enumeration needs a finite field")
    for f in equations:
        if not f.is_homogeneous():
            raise InputError("projective enumeration needs homogeneous equations")
    return equations, field, nvars


class _Reduced:
    """System restricted to the kernel of its linear part: x = K u."""

    def __init__(self, equations, field, nvars):
        self.field = field
        self.nvars = nvars
        self.empty = False
        linear, other = [], []
        for f in equations:
            if f.is_zero():
                continue
            if f.degree == 0:
                self.empty = True
            elif f.degree == 1:
                linear.append([f.coefficient(tuple(int(i == j) for i in range(nvars))) for j in range(nvars)])
            else:
                other.append(f)
        if linear:
            basis = kernel_basis(field, linear)
            self.kernel = [[vec[i] for vec in basis] for i in range(nvars)]  # nvars x s
            self.s = len(basis)
            self.eqs = [f.substitute_linear(self.kernel) for f in other] if self.s else []
            self.identity = False
        else:
            self.kernel = None
            self.s = nvars
            self.eqs = other
            self.identity = True
        if self.s == 0:
            self.empty = True

    @property
    def enumerated_dim(self) -> int:
        return self.s - 1

    def lift(self, vf, u: np.ndarray) -> np.ndarray:
        if self.identity:
            return u
        out = np.zeros((u.shape[0], self.nvars), dtype=np.int64)
        for i, row in enumerate(self.kernel):
            acc = np.zeros(u.shape[0], dtype=np.int64)
            for j, c in enumerate(row):
                if c != 0:
                    acc = vf.add(acc, vf.mul(u[:, j], int(c)))
            out[:, i] = acc
        return out


def normalize_rows(vf, pts: np.ndarray) -> np.ndarray:
    if pts.shape[0] == 0:
        return pts
    lead = np.argmax(pts != 0, axis=1)
    lv = pts[np.arange(pts.shape[0]), lead]
    inv = vf.inv(lv)
    return vf.mul(pts, inv[:, None])


def canonical_key(pt: Sequence[int]):
    lead = next(i for i, v in enumerate(pt) if v != 0)
    return (lead, tuple(pt))


def _chunk_solutions(vf, compiled, pts):
    n = pts.shape[0]
    cols = [pts[:, j] for j in range(pts.shape[1])]
    idx = np.arange(n)
    for cp in compiled:
        if idx.size == 0:
            break
        vals = vf.evaluate(cp, [c[idx] for c in cols], idx.size)
        idx = idx[vals == 0]
    return pts[idx]


def enumerate_solutions(system, field: FieldSpec | None = None, *, ambient_dim: int | None = None,
                        cap: int = HARD_CAP, threads: int = 1, limit: int | None = None) -> list[tuple]:
    """All common zeros in P^m(F_q), as normalized tuples in canonical order.

    ``system`` is a ModuliPresentation or a sequence of homogeneous MultiPoly.
    ``limit`` stops early once that many solutions are known (the result is
    then a prefix-free subset, used for emptiness tests).
    """
    equations, field, nvars = _unpack(system, field, ambient_dim)
    red = _Reduced(equations, field, nvars)
    if red.empty:
        return []
    size = projective_size(field.order, red.enumerated_dim)
    if size > cap:
        raise TooLargeError(
            f"|P^{red.enumerated_dim}(F_{field.order})| = {size} exceeds the cap {cap}; use sampling"
        )
    vf = vec_field(field)
    compiled = [vf.compile(f) for f in red.eqs]
    found: list[np.ndarray] = []
    total = 0
    chunks = projective_chunks(field.order, red.enumerated_dim, CHUNK)
    if threads > 1 and limit is None:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _chunk_solutions(vf, compiled, c), chunks))
        found = [r for r in results if r.shape[0]]
    else:
        for chunk in chunks:
            sol = _chunk_solutions(vf, compiled, chunk)
            if sol.shape[0]:
                found.append(sol)
                total += sol.shape[0]
                if limit is not None and total >= limit:
                    break
    if not found:
        return []
    sols = red.lift(vf, np.concatenate(found))
    sols = normalize_rows(vf, sols)
    out = sorted({tuple(int(v) for v in row) for row in sols}, key=canonical_key)
    return out


def is_nonempty(system, field=None, *, ambient_dim=None, cap=HARD_CAP) -> bool:
    return bool(enumerate_solutions(system, field, ambient_dim=ambient_dim, cap=cap, limit=1))


def random_hyperplane(field: FieldSpec, nvars: int, rng) -> MultiPoly:
    while True:
        coeffs = [field.random_element(rng) for _ in range(nvars)]
        if any(c != 0 for c in coeffs):
            return MultiPoly.linear_form(field, coeffs)


def _nonempty_over(equations, field, nvars, extension_degree, cap):
    if is_nonempty(equations, field, ambient_dim=nvars - 1, cap=cap):
        return True
    if extension_degree > 1:
        try:
            big = extension_of(field, extension_degree)
        except UnsupportedError:
            return False
        return is_nonempty([f.change_field(big) for f in equations], big, ambient_dim=nvars - 1, cap=cap)
    return False


def slice_votes(system, field=None, *, trials: int = 5, seed: int = 0, extension_degree: int = 2,
                ambient_dim=None, cap=HARD_CAP) -> list[int]:
    """Per-trial estimates: (number of random F_q-hyperplanes until empty) - 1.

    Emptiness is decided over F_q and, when constructible, over the degree
    ``extension_degree`` extension as well, so that a positive-dimensional
    slice whose points are all non-rational is not mistaken for empty.
    """
    equations, field, nvars = _unpack(system, field, ambient_dim)
    votes = []
    for trial in range(trials):
        rng = child_rng(seed, "slice", trial)
        eqs = list(equations)
        cuts = 0
        while _nonempty_over(eqs, field, nvars, extension_degree, cap):
            if cuts > 8 * nvars:
                raise AssertionError("slicing did not terminate")  # pragma: no cover
            eqs.append(random_hyperplane(field, nvars, rng))
            cuts += 1
        votes.append(cuts - 1)
    return votes


def dimension_by_slicing(system, field=None, *, trials: int = 5, seed: int = 0,
                         extension_degree: int = 2, ambient_dim=None, cap=HARD_CAP) -> int | None:
    """Majority vote of :func:`slice_votes`; ``None`` when votes spread by more than one."""
    votes = slice_votes(system, field, trials=trials, seed=seed, extension_degree=extension_degree,
                        ambient_dim=ambient_dim, cap=cap)
    if max(votes) - min(votes) > 1:
        return None
    counts = {v: votes.count(v) for v in set(votes)}
    return max(sorted(counts), key=lambda v: counts[v])


def smoothness_probe(system, expected_codim: int, field: FieldSpec | None = None, *,
                     sample_budget: int | None = None, seed: int = 0, ambient_dim=None,
                     cap=HARD_CAP) -> CheckReport:
    """Jacobian rank at every (or a seeded sample of) solution point."""
    t0 = time.perf_counter()
    equations, field, nvars = _unpack(system, field, ambient_dim)
    sols = enumerate_solutions(equations, field, ambient_dim=nvars - 1, cap=cap)
    if not sols:
        return CheckReport(INCONCLUSIVE, field, message="no solutions to probe", seed=seed,
                           wall_time_ms=(time.perf_counter() - t0) * 1e3)
    points = sols
    if sample_budget is not None and len(sols) > sample_budget:
        rng = child_rng(seed, "probe")
        points = sorted(rng.sample(sols, sample_budget), key=canonical_key)
    ranks = [rank(field, jacobian_matrix(equations, pt)) for pt in points]
    bad = next((pt for pt, r in zip(points, ranks) if r != expected_codim), None)
    return CheckReport(
        FAIL if bad is not None else PASS,
        field,
        points_examined=len(points),
        solutions_found=len(sols),
        solutions=sols,
        codim_observed=max(ranks),
        seed=seed,
        witness=bad,
        message="" if bad is None else f"Jacobian rank {ranks[points.index(bad)]} != {expected_codim}",
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
    )


def sample_points(equations: Sequence[MultiPoly], field: FieldSpec, count: int, rng, *,
                  slice_dim: int | None = None, max_slices: int = 256) -> list[tuple]:
    """Up to ``count`` distinct points of V(equations)(F_q) from random linear slices.

    Each slice is a random P^slice_dim (default: number of equations), so a
    complete intersection meets it in finitely many points.
    """
    equations = [f.change_field(field) for f in equations]
    nvars = equations[0].nvars
    s = len(equations) if slice_dim is None else slice_dim
    seen: dict[tuple, None] = {}
    for _ in range(max_slices):
        basis = [[field.random_element(rng) for _ in range(s + 1)] for _ in range(nvars)]
        if rank(field, basis) < s + 1:
            continue
        restricted = [f.substitute_linear(basis) for f in equations]
        sols = enumerate_solutions(restricted, field, ambient_dim=s)
        if not sols:
            continue
        lifted = [normalize_point(field, _apply(field, basis, u)) for u in sols]
        rng.shuffle(lifted)
        for pt in lifted:
            seen.setdefault(pt, None)
            if len(seen) >= count:
                return list(seen)
    return list(seen)


def _apply(field, matrix, vec):
    out = []
    for row in matrix:
        acc = field.zero
        for a, b in zip(row, vec):
            if a != 0 and b != 0:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out
