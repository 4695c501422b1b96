import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from a1lab.errors import InputError, TooLargeError
from a1lab.exactalg import MultiPoly, jacobian_rank_at, make_extension, rank
from a1lab.geomcheck import (FAIL, INCONCLUSIVE, PASS, CheckReport, dimension_by_slicing,
                             enumerate_solutions, general_point, projective_size, sample_points,
                             smoothness_probe, vec_field)
from a1lab.geomcheck.enumerate import slice_votes
from a1lab.moduli import line_moduli_through_point

from conftest import F3, F5, F7, cached_pair, gens, naive_points, naive_zeros

F9 = make_extension(3, 2)
F25 = make_extension(5, 2)


def test_enumerate_examples():
    x = gens(F3, 3)
    assert enumerate_solutions([x[0], x[1]]) == [(0, 0, 1)]
    assert len(enumerate_solutions([], F5, ambient_dim=1)) == 6
    y = gens(F3, 4)
    quadric = y[0] * y[3] - y[1] * y[2]
    pts = enumerate_solutions([quadric])
    assert len(pts) == 16 == (3 + 1) ** 2
    assert pts == naive_zeros([quadric], F3, 4)


@pytest.mark.parametrize("field", [F5, F9], ids=str)
def test_enumeration_matches_naive_scan(field):
    rng = random.Random(4)
    for _ in range(5):
        eqs = [MultiPoly.linear_form(field, [field.random_element(rng) for _ in range(4)])]
        eqs.append(eqs[0] * eqs[0] + MultiPoly.variable(field, 4, 1) * MultiPoly.variable(field, 4, 2))
        from a1lab.exactalg import random_homogeneous
        eqs.append(random_homogeneous(field, 4, 2, rng))
        for system in (eqs[1:], eqs, eqs[:1]):
            assert enumerate_solutions(system) == naive_zeros(system, field, 4)


def test_canonical_order_is_naive_order():
    assert enumerate_solutions([], F3, ambient_dim=2) == list(naive_points(F3, 3))


def test_cap_and_threads():
    x = gens(F7, 5)
    with pytest.raises(TooLargeError, match="sampling"):
        enumerate_solutions([x[0] ** 2 + x[1] * x[2]], cap=1000)
    eq = [x[0] ** 3 + x[1] ** 3 + x[2] ** 3 + x[3] ** 3 + x[4] ** 3]
    assert enumerate_solutions(eq, threads=4) == enumerate_solutions(eq, threads=1)


def test_linear_elimination_reduces_enumerated_space():
    # three hyperplanes cut P^6(F_7) (137257 points) down to a P^3 (400 points)
    x = gens(F7, 7)
    eqs = [x[0] + x[1], x[2] - x[3], x[4] + 2 * x[5] + x[6], x[0] * x[1] + x[6] ** 2]
    sols = enumerate_solutions(eqs, cap=400)
    assert sols == naive_zeros(eqs, F7, 7)


def test_input_errors():
    with pytest.raises(InputError):
        enumerate_solutions([], F5)
    x = gens(F5, 3)
    with pytest.raises(InputError):
        enumerate_solutions([x[0] ** 2 + x[1]])


def test_dimension_by_slicing_examples():
    y = gens(F5, 4)
    assert dimension_by_slicing([y[0] * y[3] - y[1] * y[2]], trials=5, seed=1) == 2
    assert dimension_by_slicing([y[0], y[1], y[2]], trials=5) == 0
    assert dimension_by_slicing([], F5, ambient_dim=3) == 3


def test_dimension_by_slicing_on_line_system_over_f25():
    pair = cached_pair(3, (2,), 1, 5, 42).over(F25)
    x = general_point(pair, seed=2).points[0]
    pres = line_moduli_through_point(pair, x)
    assert dimension_by_slicing(pres, trials=5, seed=3) == 0


def test_slicing_sees_points_over_the_extension():
    # x0^2 + x1^2 = 0 has only [0:0:1] over F_3 but two lines over F_9;
    # the extension check keeps it at dimension 1
    x = gens(F3, 3)
    assert dimension_by_slicing([x[0] ** 2 + x[1] ** 2], trials=5) == 1
    votes = slice_votes([x[0] ** 2 + x[1] ** 2], trials=5, extension_degree=1)
    assert min(votes) == 0


def test_smoothness_probe_examples():
    x = gens(F5, 3)
    report = smoothness_probe([x[0]], 1)
    assert report.verdict == PASS and report.codim_observed == 1
    report = smoothness_probe([x[0] * x[1]], 1)
    assert report.verdict == FAIL and report.witness == (0, 0, 1)
    report = smoothness_probe([x[0] ** 2 + x[1] ** 2 + x[2] ** 2, x[0], x[1]], 3)
    assert report.verdict == INCONCLUSIVE


def test_smoothness_probe_budget_is_deterministic():
    x = gens(F7, 4)
    eq = [x[0] ** 2 + x[1] ** 2 + x[2] ** 2 + x[3] ** 2]
    a = smoothness_probe(eq, 1, sample_budget=10, seed=5)
    b = smoothness_probe(eq, 1, sample_budget=10, seed=5)
    assert a.points_examined == 10 and a.to_json() == b.to_json()


def test_report_contract():
    with pytest.raises(ValueError):
        CheckReport(FAIL)
    with pytest.raises(ValueError):
        CheckReport("maybe")
    big = CheckReport(PASS, F5, solutions=[(1, 0)] * 2000, solutions_found=2000)
    assert big.solutions is None
    assert "wall_time_ms" not in big.to_json()
    assert "wall_time_ms" in big.to_json(include_timing=True)


def test_sample_points_lie_on_variety():
    pair = cached_pair(4, (3,), 1, 7, 4)
    pts = sample_points(list(pair.F), F7, 30, random.Random(1))
    assert len(pts) == len(set(pts)) == 30
    assert all(pair.F[0](p) == 0 for p in pts)


# -- vectorized arithmetic ----------------------------------------------------------

@pytest.mark.parametrize("field", [F7, F9, F25, make_extension(7, 4)], ids=str)
def test_vecfield_matches_scalar_ops(field):
    vf = vec_field(field)
    rng = random.Random(2)
    a = [field.random_element(rng) for _ in range(300)]
    b = [field.random_element(rng) for _ in range(300)]
    A, B = np.array(a), np.array(b)
    assert list(vf.add(A, B)) == [field.add(x, y) for x, y in zip(a, b)]
    assert list(vf.mul(A, B)) == [field.mul(x, y) for x, y in zip(a, b)]
    assert list(vf.neg(A)) == [field.neg(x) for x in a]
    nz = [x for x in a if x]
    assert list(vf.inv(np.array(nz))) == [field.inv(x) for x in nz]


@given(st.integers(0, 10**6))
def test_batch_rank_matches_exact_rank(seed):
    rng = random.Random(seed)
    field = F9 if seed % 2 else F7
    vf = vec_field(field)
    mats = np.array([[[field.random_element(rng) if rng.random() < 0.6 else 0 for _ in range(4)]
                      for _ in range(3)] for _ in range(8)])
    assert list(vf.batch_rank(mats)) == [rank(field, m.tolist()) for m in mats]


def test_projective_size():
    assert projective_size(5, 1) == 6
    assert projective_size(7, 4) == 2801
    assert projective_size(3, -1) == 0


def test_jacobian_rank_at_enumerated_points():
    x = gens(F7, 3)
    conic = x[0] ** 2 + x[1] ** 2 - x[2] ** 2
    for pt in enumerate_solutions([conic]):
        assert jacobian_rank_at([conic], pt) == 1
