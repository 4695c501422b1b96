"""Brute-force A^1-line and A^1-conic searches over F_q.

These never build the symbolic moduli systems: lines and conics are
parametrized directly and the pair's equations are composed with the
parametrization, coefficient by coefficient in t.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..cipair import CIPair
from ..errors import InputError, PreconditionError, TooLargeError, UnsupportedError
from ..exactalg.fields import FieldSpec
from ..exactalg.linalg import rank
from ..exactalg.poly import MultiPoly, evaluate
from ..moduli import IRREDUCIBLE, ConicCoefficients, conic_reducibility
from .enumerate import HARD_CAP, canonical_key, enumerate_solutions
from .vecfield import projective_chunks, projective_size, vec_field


def _setup(pair: CIPair, field: FieldSpec | None, points):
    target = field or pair.field
    if not target.is_finite:
        raise UnsupportedError("oracles run over finite fields")
    P = pair.over(target)
    out = []
    for x in points:
        if len(x) != P.nvars:
            raise InputError(f"point has {len(x)} coordinates, expected {P.nvars}")
        pt = tuple(target.coerce(v) for v in x)
        if all(v == 0 for v in pt):
            raise InputError("the zero vector is not a projective point")
        if any(evaluate(f, pt) != 0 for f in P.F):
            raise PreconditionError("base point is not on X")
        if evaluate(P.G, pt) == 0:
            raise PreconditionError("base point lies on the boundary D")
        out.append(pt)
    return P, target, out


def _tangent_forms(P: CIPair, x) -> list[MultiPoly]:
    return [MultiPoly.linear_form(P.field, [evaluate(g, x) for g in f.gradient()]) for f in P.F]


def oracle_a1_lines(pair: CIPair, x, field: FieldSpec | None = None, *, tangent_prune: bool = True,
                    cap: int = HARD_CAP) -> list[tuple]:
    """Boundary points r in D(F_q) of the lines through x lying in X and meeting D only at r.

    The line is r + t x: containment means every F_i(r + t x) vanishes as a
    polynomial in t; A^1 contact means G(r + t x) = G(x) t^k, i.e. all lower
    t-coefficients vanish.  ``tangent_prune`` restricts candidates to the
    embedded tangent space at x, which contains every line of X through x.
    """
    P, target, (x,) = _setup(pair, field, [x])
    candidates_eqs = list(P.F) + [P.G]
    if tangent_prune:
        candidates_eqs += [t for t in _tangent_forms(P, x) if not t.is_zero()]
    candidates = enumerate_solutions(candidates_eqs, target, cap=cap)
    if not candidates:
        return []
    vf = vec_field(target)
    arr = np.asarray(candidates, dtype=np.int64)
    n = arr.shape[0]
    coord_polys = [[arr[:, j], int(x[j])] for j in range(P.nvars)]
    keep = np.ones(n, dtype=bool)
    for f in P.F:
        for coeff in vf.compose(vf.compile(f), coord_polys, n):
            keep &= coeff == 0
    g_coeffs = vf.compose(vf.compile(P.G), coord_polys, n)
    for coeff in g_coeffs[: P.k]:
        keep &= coeff == 0
    return [candidates[i] for i in np.nonzero(keep)[0]]


@dataclass
class ConicOracleResult:
    node_points: list[tuple]
    smooth_conic_count: int | None
    planes_examined: int
    conics: list[dict] | None = None

    def to_json(self, field: FieldSpec) -> dict:
        from ..exactalg.literals import point_to_literal

        return {
            "node_points": [point_to_literal(field, r) for r in self.node_points],
            "smooth_conic_count": self.smooth_conic_count,
            "planes_examined": self.planes_examined,
        }


def _complement_basis(field, p, q) -> list[list]:
    """Standard basis vectors completing span(p, q) to the whole space."""
    n1 = len(p)
    chosen: list[list] = []
    rows = [list(p), list(q)]
    for j in range(n1):
        e = [field.one if i == j else field.zero for i in range(n1)]
        if rank(field, rows + [e]) > len(rows):
            rows.append(e)
            chosen.append(e)
    if len(chosen) != n1 - 2:
        raise InputError("p and q are the same projective point")
    return chosen


def _count_smooth_conics(P: CIPair, target, p, q, cap: int):
    n1 = P.nvars
    comp = _complement_basis(target, p, q)
    m = len(comp) - 1
    planes = projective_size(target.order, m)
    qq = target.order
    if planes * qq**3 > cap:
        raise TooLargeError(f"{planes} planes x {qq ** 3} conics exceed the cap {cap}")
    vf = vec_field(target)
    # all (a1, a2, a3) with a4 = 1; a4 = 0 conics contain the line pq
    idx = np.arange(qq**3, dtype=np.int64)
    a1, a2, a3 = idx // (qq * qq), (idx // qq) % qq, idx % qq
    N = idx.size
    one = 1
    # plane coordinates along the parametrization m = (1, t):
    # X = a2 + t, Y = -(a1 + a3 t), Z = a2 t + t^2
    Xc = [a2, vf.full(N, one), vf.full(N, 0)]
    Yc = [vf.neg(a1), vf.neg(a3), vf.full(N, 0)]
    Zc = [vf.full(N, 0), a2, vf.full(N, one)]
    compiled_F = [vf.compile(f) for f in P.F]
    compiled_G = vf.compile(P.G)
    count = 0
    found = []
    for chunk in projective_chunks(target.order, m, 1 << 12):
        for u in chunk:
            s = [target.zero] * n1
            for coef, e in zip(u, comp):
                if coef:
                    s = [target.add(a, target.mul(int(coef), b)) for a, b in zip(s, e)]
            coords = []
            for j in range(n1):
                coords.append([vf.add(vf.add(vf.mul(Xc[d], s[j]), vf.mul(Yc[d], p[j])), vf.mul(Zc[d], q[j]))
                               for d in range(3)])
            sel = np.arange(N)
            for cp in compiled_F:
                if sel.size == 0:
                    break
                sub = [[c[sel] for c in cc] for cc in coords]
                ok = np.ones(sel.size, dtype=bool)
                for coeff in vf.compose(cp, sub, sel.size):
                    ok &= coeff == 0
                sel = sel[ok]
            if sel.size == 0:
                continue
            sub = [[c[sel] for c in cc] for cc in coords]
            g = vf.compose(compiled_G, sub, sel.size)
            g = g + [np.zeros(sel.size, dtype=np.int64)] * (3 - len(g))
            for k, i in enumerate(sel):
                c0, c1, c2 = (int(g[0][k]), int(g[1][k]), int(g[2][k]))
                if c0 == c1 == c2 == 0:
                    continue
                disc = target.sub(target.mul(c1, c1), target.mul(target.from_int(4), target.mul(c0, c2)))
                if disc != 0:
                    continue
                conic = ConicCoefficients(int(a1[i]), int(a2[i]), int(a3[i]), 1, target)
                if conic_reducibility(conic) != IRREDUCIBLE:
                    continue
                count += 1
                found.append({"plane_point": tuple(s), "coefficients": conic.coefficients})
    return count, planes, found


def oracle_a1_conics(pair: CIPair, p, q, field: FieldSpec | None = None, *, count_conics: bool = True,
                     cap: int = HARD_CAP) -> ConicOracleResult:
    """Node points of reducible A^1-conics through p, q and the number of smooth ones.

    Node points are the r that are boundary points of A^1-lines from both p
    and q.  Smooth A^1-conics are enumerated plane by plane: for every plane
    through p, q and every irreducible conic a1 x^2 + a2 xy + a3 xz + yz in it
    (plane point x s + y p + z q), containment in X is read from the
    rational parametrization and the boundary condition is a double root of
    G along the conic.
    """
    if pair.k != 1:
        raise UnsupportedError(f"conic oracles need boundary degree k = 1, got k = {pair.k}")
    if (field or pair.field).characteristic == 2:
        raise UnsupportedError("conic oracles need characteristic != 2")
    P, target, (pp, qq) = _setup(pair, field, [p, q])
    if rank(target, [list(pp), list(qq)]) < 2:
        raise InputError("p and q are the same projective point")
    from_p = set(oracle_a1_lines(P, pp, target, cap=cap))
    from_q = set(oracle_a1_lines(P, qq, target, cap=cap))
    nodes = sorted(from_p & from_q, key=canonical_key)
    count, planes, found = (None, 0, None)
    if count_conics:
        count, planes, found = _count_smooth_conics(P, target, pp, qq, cap)
    return ConicOracleResult(nodes, count, planes, found)
