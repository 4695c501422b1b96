"""Linear coordinate changes that move a chosen point to [1:0:...:0]."""

from __future__ import annotations

from typing import Sequence

from ..errors import InputError
from .fields import FieldSpec
from .linalg import mat_vec
from .poly import MultiPoly, evaluate, restrict_to_line


class PointFrame:
    """Coordinates ``y`` with ``x = A y`` and ``A e_0 = point``.

    The columns of ``A`` are the point itself followed by the standard basis
    vectors ``e_j`` for ``j != pivot`` in increasing order; ``pivot`` defaults
    to the first nonzero coordinate of the point.
    """

    def __init__(self, field: FieldSpec, point: Sequence, pivot: int | None = None):
        pt = [field.coerce(v) for v in point]
        if pivot is None:
            pivot = next((i for i, v in enumerate(pt) if v != 0), None)
        if pivot is None or pt[pivot] == 0:
            raise InputError("frame pivot must be a nonzero coordinate of the point")
        self.field = field
        self.point = tuple(pt)
        self.pivot = pivot
        n1 = len(pt)
        others = [j for j in range(n1) if j != pivot]
        self.matrix = [[pt[i]] + [field.one if i == j else field.zero for j in others] for i in range(n1)]
        # inverse: y_0 = x_pivot / pt_pivot ; y_m = x_{others[m-1]} - pt_{others[m-1]} y_0
        inv_p = field.inv(pt[pivot])
        inv = [[field.zero] * n1 for _ in range(n1)]
        inv[0][pivot] = inv_p
        for m, j in enumerate(others, start=1):
            inv[m][j] = field.one
            inv[m][pivot] = field.neg(field.mul(pt[j], inv_p))
        self.inverse = inv

    def to_frame(self, f: MultiPoly) -> MultiPoly:
        """``f(A y)``."""
        return f.substitute_linear(self.matrix)

    def from_frame(self, g: MultiPoly) -> MultiPoly:
        """``g(A^{-1} x)``."""
        return g.substitute_linear(self.inverse)

    def pull_point(self, x: Sequence) -> list:
        return mat_vec(self.field, self.inverse, [self.field.coerce(v) for v in x])


def line_values(f: MultiPoly, through: Sequence, other: Sequence) -> list:
    """``[P_0(r), ..., P_e(r)]`` for the line joining ``through`` and ``other``.

    Computed with :func:`restrict_to_line` in the frame of ``through``; all
    values vanish exactly when the line lies on ``V(f)``.
    """
    frame = PointFrame(f.field, through)
    exp = restrict_to_line(frame.to_frame(f))
    r = frame.pull_point(other)
    return [evaluate(pj, r) for pj in exp.coefficients]
