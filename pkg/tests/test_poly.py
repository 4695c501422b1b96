import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a1lab.errors import InputError
from a1lab.exactalg import MultiPoly, evaluate, random_homogeneous, restrict_to_line
from a1lab.exactalg.literals import poly_from_literal, poly_to_literal

from conftest import F5, F7, QQ, gens


def random_poly(field, nvars, rng, max_deg=3, nterms=4):
    terms = {}
    for _ in range(nterms):
        exp = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        if field.is_finite:
            terms[exp] = field.random_element(rng)
        else:
            terms[exp] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return MultiPoly(field, nvars, terms)


def by_substitution(f):
    """f(x0 + t, x1, ..., xn) with t appended as last variable."""
    n = f.nvars
    ys = gens(f.field, n + 1)
    return f.substitute([ys[0] + ys[n]] + ys[1:n])


@pytest.mark.parametrize("field", [QQ, F5], ids=["Q", "F5"])
def test_ring_axioms_random(field):
    rng = random.Random(17)
    for _ in range(500):
        a, b, c = (random_poly(field, 3, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == MultiPoly.zero(field, 3)


def test_canonical_form_drops_zero_coefficients():
    f = MultiPoly(F5, 2, {(1, 0): 5, (0, 1): 2})
    assert len(f) == 1
    x = gens(F5, 2)
    assert (x[0] * 5).is_zero()


def test_evaluate_examples():
    x = gens(QQ, 3)
    assert evaluate(x[0] ** 2 + x[1] * x[2], (1, 0, 0)) == 1
    y = gens(QQ, 3)
    for a in range(-2, 3):
        for b in range(-2, 3):
            assert evaluate(y[0] ** 3, (0, a, b)) == 0
    with pytest.raises(InputError):
        evaluate(x[0], (1, 2))


def test_homogeneous_scaling_over_f7():
    rng = random.Random(3)
    for _ in range(50):
        f = random_homogeneous(F7, 4, rng.randint(1, 5), rng)
        pt = [F7.random_element(rng) for _ in range(4)]
        scaled = [F7.mul(3, v) for v in pt]
        assert f(scaled) == F7.mul(F7.pow(3, f.degree), f(pt))


def test_restrict_examples():
    x = gens(QQ, 4)
    assert restrict_to_line(x[0] ** 3).coefficients == (
        MultiPoly.constant(QQ, 4, 1), 3 * x[0], 3 * x[0] ** 2, x[0] ** 3)
    f = x[0] * x[1] ** 2 + x[2] ** 3
    zero = MultiPoly.zero(QQ, 4)
    assert restrict_to_line(f).coefficients == (zero, zero, x[1] ** 2, f)
    g = x[1] * x[2] * x[3]
    assert restrict_to_line(g).coefficients == (zero, zero, zero, g)


def test_restrict_small_characteristic():
    # over F_5 a degree-6 form; factorials vanish but substitution is exact
    x = gens(F5, 3)
    f = x[0] ** 6 + x[0] ** 5 * x[1]
    exp = restrict_to_line(f)
    assert exp.reconstruct() == by_substitution(f)
    # (x0+t)^5 = x0^5 + t^5 in char 5
    assert exp.coefficients[1] == MultiPoly.constant(F5, 3, 6) * x[0] + x[1]


def test_restrict_rejects_bad_input():
    x = gens(QQ, 2)
    with pytest.raises(InputError):
        restrict_to_line(x[0] ** 2 + x[1])
    with pytest.raises(InputError):
        restrict_to_line(MultiPoly.zero(QQ, 2))


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6), st.sampled_from(["Q", "F5"]))
@settings(max_examples=150)
def test_restrict_reconstruction_property(seed, nvars, degree, which):
    field = QQ if which == "Q" else F5
    rng = random.Random(seed)
    f = random_homogeneous(field, nvars, degree, rng, density=0.3)
    if f.is_zero():
        return
    exp = restrict_to_line(f)
    assert exp.reconstruct() == by_substitution(f)
    for j, pj in enumerate(exp.coefficients):
        assert pj.is_zero() or (pj.is_homogeneous(j) and pj.degree == j)
    assert exp.coefficients[-1] == f
    assert exp.coefficients[0] == MultiPoly.constant(field, nvars, f.coefficient((degree,) + (0,) * (nvars - 1)))


@given(st.integers(0, 10**6))
def test_literal_roundtrip(seed):
    rng = random.Random(seed)
    for field in (QQ, F7):
        f = random_poly(field, 3, rng)
        assert poly_from_literal(poly_to_literal(f), field, 3) == f


def test_literal_format():
    x = gens(QQ, 2)
    f = x[0] * Fraction(1, 2) - x[1]
    assert poly_to_literal(f) == [["1/2", [1, 0]], ["-1", [0, 1]]]
    with pytest.raises(InputError):
        poly_from_literal([["1", [1, 0, 0]]], QQ, 2)


def test_partial_and_gradient():
    x = gens(F7, 3)
    f = x[0] ** 3 * x[1] + x[2] ** 2
    assert f.partial(0) == MultiPoly.constant(F7, 3, 3) * x[0] ** 2 * x[1]
    assert f.gradient()[2] == MultiPoly.constant(F7, 3, 2) * x[2]


def test_substitute_linear_matches_substitute():
    rng = random.Random(5)
    for _ in range(20):
        f = random_homogeneous(F7, 3, 3, rng)
        M = [[F7.random_element(rng) for _ in range(3)] for _ in range(3)]
        ys = gens(F7, 3)
        images = [MultiPoly.linear_form(F7, row) for row in M]
        assert f.substitute_linear(M) == f.substitute(images)
        del ys


def test_scalar_multiple():
    x = gens(F7, 2)
    f = x[0] ** 2 + x[1] ** 2
    assert (f * 3).is_scalar_multiple_of(f)
    assert not (f + x[0] * x[1]).is_scalar_multiple_of(f)
