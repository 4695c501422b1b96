import pytest

from a1lab.errors import InputError, PreconditionError, TooLargeError, UnsupportedError
from a1lab.exactalg import make_extension, normalize_point, rank
from a1lab.geomcheck import (PASS, dimension_by_slicing, enumerate_solutions, general_point,
                             general_point_pair, oracle_a1_conics, oracle_a1_lines,
                             smoothness_probe)
from a1lab.moduli import (IRREDUCIBLE, ConicCoefficients, conic_boundary_locus,
                          conic_reducibility, line_moduli_through_point)

from conftest import F5, F7, cached_pair, naive_points

F25 = make_extension(5, 2)
F49 = make_extension(7, 2)


def pointwise_lines(pair, x):
    """k = 1 only: r in D with every F_q-point of the line through x and r on X.

    Valid when q exceeds every d_i, since a binary form of degree d vanishing
    at q + 1 > d points is zero.
    """
    F = pair.field
    out = []
    for r in naive_points(F, pair.nvars):
        if any(f(r) != 0 for f in pair.F) or pair.G(r) != 0:
            continue
        on_line = [tuple(F.add(F.mul(s, a), b) for a, b in zip(r, x)) for s in F.elements()]
        if all(f(pt) == 0 for f in pair.F for pt in on_line):
            out.append(r)
    return out


def test_oracle_matches_pointwise_scan():
    for seed in range(3):
        pair = cached_pair(3, (2,), 1, 7, seed)
        x = general_point(pair, seed=seed).points[0]
        assert oracle_a1_lines(pair, x) == pointwise_lines(pair, x)


@pytest.mark.parametrize("n,degrees,k,p", [(3, (2,), 1, 5), (4, (3,), 1, 7), (4, (2,), 2, 5)])
def test_tangent_pruning_changes_nothing(n, degrees, k, p):
    for seed in range(3):
        pair = cached_pair(n, degrees, k, p, seed)
        x = general_point(pair, seed=seed).points[0]
        assert oracle_a1_lines(pair, x) == oracle_a1_lines(pair, x, tangent_prune=False)


def test_quadric_surface_has_two_lines_over_f25():
    for seed in range(4):
        pair = cached_pair(3, (2,), 1, 5, seed)
        x = general_point(pair, F25, seed=seed).points[0]
        assert len(oracle_a1_lines(pair, x, F25)) == 2


@pytest.mark.parametrize("n,degrees,k,fields", [
    (3, (2,), 1, (F5, F25)),
    (4, (3,), 1, (F7, F49)),
    (4, (2,), 1, (F5, F25)),
    (5, (2, 2), 1, (F5, F25)),
    (4, (2,), 2, (F5, F25)),
])
def test_oracle_equivalence(n, degrees, k, fields):
    """Symbolic line systems and the brute-force search agree: 10 pairs x 3 points x 2 fields."""
    p = fields[0].characteristic
    for seed in range(10):
        pair = cached_pair(n, degrees, k, p, seed)
        for field in fields:
            for j in range(3):
                P = pair.over(field)
                x = general_point(P, seed=100 * seed + j, escalate=False).points[0]
                pres = line_moduli_through_point(P, x)
                assert enumerate_solutions(pres) == oracle_a1_lines(P, x)


def test_degree_bound_over_extensions():
    for seed in range(4):
        pair = cached_pair(4, (3,), 1, 7, seed)
        x = general_point(pair, seed=seed).points[0]
        for r in (1, 2, 3):
            K = make_extension(7, r)
            assert len(oracle_a1_lines(pair, x, K)) <= 6


def test_negative_expected_dimension_gives_no_lines():
    for p in (5, 7):
        for seed in range(3):
            pair = cached_pair(3, (3,), 1, p, seed)
            x = general_point(pair, seed=seed).points[0]
            assert oracle_a1_lines(pair, x) == []


def test_oracle_preconditions(quadric_p3_f5):
    with pytest.raises(PreconditionError):
        oracle_a1_lines(quadric_p3_f5, (1, 1, 4, 4))
    with pytest.raises(PreconditionError):
        oracle_a1_lines(quadric_p3_f5, (1, 1, 1, 0))


def test_line_system_dimension_law():
    for n, expected in ((4, 1), (3, 0)):
        for seed in range(5):
            pair = cached_pair(n, (2,), 1, 5, seed).over(F25)
            x = general_point(pair, seed=seed).points[0]
            pres = line_moduli_through_point(pair, x)
            assert dimension_by_slicing(pres, trials=5, seed=seed) == expected == n - 3


def test_line_system_smoothness():
    for seed in range(5):
        pair = cached_pair(4, (2,), 1, 7, seed)
        x = general_point(pair, seed=seed).points[0]
        pres = line_moduli_through_point(pair, x)
        report = smoothness_probe(pres, 3)
        assert report.verdict == PASS


# -- conics ------------------------------------------------------------------------

@pytest.mark.parametrize("n,field", [(3, F7), (4, F7), (3, F25), (4, F25)], ids=str)
def test_node_equivalence(n, field):
    for seed in range(10):
        pair = cached_pair(n, (2,), 1, field.characteristic, seed).over(field)
        p, q = general_point_pair(pair, seed=seed, escalate=False).points
        delta = conic_boundary_locus(pair, p, q)
        oracle = oracle_a1_conics(pair, p, q, count_conics=False)
        assert enumerate_solutions(delta) == oracle.node_points
        if n == 3:
            assert len(oracle.node_points) <= 2


def test_delta_smoothness_on_quadric_threefolds():
    for seed in range(5):
        pair = cached_pair(4, (2,), 1, 7, seed)
        p, q = general_point_pair(pair, seed=seed).points
        delta = conic_boundary_locus(pair, p, q)
        report = smoothness_probe(delta, 4)
        assert report.verdict in (PASS, "inconclusive")


def test_smooth_conic_count_is_deterministic():
    pair = cached_pair(4, (2,), 1, 7, 3)
    p, q = general_point_pair(pair, seed=3).points
    a = oracle_a1_conics(pair, p, q)
    b = oracle_a1_conics(pair, p, q)
    assert a.smooth_conic_count == b.smooth_conic_count and a.planes_examined == 57
    for conic in a.conics:
        assert conic["coefficients"][3] == 1


def test_conic_oracle_errors():
    pair = cached_pair(4, (2,), 1, 7, 0)
    p, q = general_point_pair(pair, seed=0).points
    with pytest.raises(InputError):
        oracle_a1_conics(pair, p, p)
    with pytest.raises(TooLargeError):
        oracle_a1_conics(pair, p, q, cap=100)
    k2 = cached_pair(4, (2,), 2, 7, 0)
    with pytest.raises(UnsupportedError):
        oracle_a1_conics(k2, p, q)
    with pytest.raises(UnsupportedError):
        oracle_a1_conics(cached_pair(3, (2,), 1, 2, 0), (1, 0, 0, 0), (0, 1, 0, 0))


def pointwise_smooth_conics(pair, p, q):
    """Count irreducible conics a1 x^2 + a2 xy + a3 xz + yz through p, q with every
    F_q-point on X and exactly one F_q-point on D (n = 3: one complement vector suffices
    per plane).  Independent of the rational parametrization used by the oracle.
    """
    F = pair.field
    plane_pts = list(naive_points(F, 3))
    count = 0
    seen_planes = set()
    for s in naive_points(F, pair.nvars):
        if rank(F, [list(s), list(p), list(q)]) < 3:
            continue
        key = frozenset(
            normalize_point(F, [F.add(F.add(F.mul(u, a), F.mul(v, b)), F.mul(w, c)) for a, b, c in zip(s, p, q)])
            for u, v, w in plane_pts
        )
        if key in seen_planes:
            continue
        seen_planes.add(key)
        for a1 in F.elements():
            for a2 in F.elements():
                for a3 in F.elements():
                    conic = ConicCoefficients(a1, a2, a3, 1, F)
                    if conic_reducibility(conic) != IRREDUCIBLE:
                        continue
                    poly = conic.as_poly()
                    pts = [tuple(F.add(F.add(F.mul(u, a), F.mul(v, b)), F.mul(w, c))
                                 for a, b, c in zip(s, p, q))
                           for u, v, w in plane_pts if poly((u, v, w)) == 0]
                    if all(f(pt) == 0 for f in pair.F for pt in pts):
                        if sum(1 for pt in pts if pair.G(pt) == 0) == 1:
                            count += 1
    return count, len(seen_planes)


def test_smooth_conic_count_matches_pointwise_scan():
    for seed in range(3):
        pair = cached_pair(3, (2,), 1, 7, seed)
        p, q = general_point_pair(pair, seed=seed).points
        count, planes = pointwise_smooth_conics(pair, p, q)
        result = oracle_a1_conics(pair, p, q)
        assert result.planes_examined == planes == 8
        assert result.smooth_conic_count == count
