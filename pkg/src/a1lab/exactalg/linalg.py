"""Exact Gaussian elimination over a FieldSpec (matrices are lists of rows)."""

from __future__ import annotations

from typing import Sequence

from ..errors import InputError, PreconditionError
from .fields import FieldSpec
from .poly import MultiPoly, evaluate


def row_reduce(field: FieldSpec, matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    F = field
    rows = [[F.coerce(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(v, inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [F.sub(a, F.mul(factor, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(field: FieldSpec, matrix: Sequence[Sequence]) -> int:
    return len(row_reduce(field, matrix)[1])


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


def kernel_basis(field: FieldSpec, matrix: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : M v = 0}`` as a list of vectors."""
    F = field
    if not matrix:
        if ncols is None:
            raise InputError("ncols required for an empty matrix")
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    ncols = len(matrix[0])
    rref, pivots = row_reduce(F, matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(rref, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def inverse(field: FieldSpec, matrix: Sequence[Sequence]) -> list[list]:
    F = field
    n = len(matrix)
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(matrix)]
    rref, pivots = row_reduce(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise InputError("matrix is singular")
    return [row[n:] for row in rref[:n]]


def mat_vec(field: FieldSpec, matrix: Sequence[Sequence], vec: Sequence) -> list:
    F = field
    out = []
    for row in matrix:
        acc = F.zero
        for a, b in zip(row, vec):
            if a != 0 and b != 0:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def jacobian_matrix(system: Sequence[MultiPoly], point: Sequence) -> list[list]:
    return [[evaluate(f.partial(i), point) for i in range(f.nvars)] for f in system]


def jacobian_rank_at(system: Sequence[MultiPoly], point: Sequence) -> int:
    """Rank of the Jacobian of ``system`` at a common zero ``point``."""
    if not system:
        return 0
    field = system[0].field
    for f in system:
        if len(point) != f.nvars:
            raise InputError("point dimension does not match the system")
        if evaluate(f, point) != 0:
            raise PreconditionError(f"point {tuple(point)} is not a zero of every equation")
    return rank(field, jacobian_matrix(system, point))
