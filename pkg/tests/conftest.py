import functools
import itertools

import pytest
from hypothesis import HealthCheck, settings

from a1lab.cipair import CIPair, random_pair
from a1lab.exactalg import MultiPoly, PrimeField, RationalField, make_extension

settings.register_profile(
    "a1lab", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("a1lab")

F3, F5, F7 = PrimeField(3), PrimeField(5), PrimeField(7)
QQ = RationalField()


def gens(field, nvars):
    return [MultiPoly.variable(field, nvars, i) for i in range(nvars)]


def naive_points(field, nvars):
    """Canonical projective points by plain itertools (first nonzero coordinate 1)."""
    elems = list(field.elements())
    for lead in range(nvars):
        for tail in itertools.product(elems, repeat=nvars - lead - 1):
            yield (field.zero,) * lead + (field.one,) + tail


def naive_zeros(equations, field, nvars):
    return [pt for pt in naive_points(field, nvars) if all(f(pt) == 0 for f in equations)]


@functools.lru_cache(maxsize=None)
def cached_pair(n, degrees, k, p, seed, r=1):
    field = PrimeField(p) if r == 1 else make_extension(p, r)
    return random_pair(n, degrees, k, field, seed)


def fermat_pair(field, n, d, boundary=None):
    x = gens(field, n + 1)
    F = x[0] ** d
    for xi in x[1:]:
        F = F + xi**d
    G = boundary(x) if boundary else functools.reduce(lambda a, b: a + b, x)
    return CIPair(n, (d,), G.degree, (F,), G, field)


@pytest.fixture
def quadric_p3_f5():
    x = gens(F5, 4)
    return CIPair(3, (2,), 1, (x[0] * x[3] - x[1] * x[2],), x[0] + x[3], F5)


@functools.lru_cache(maxsize=None)
def split_conics(p):
    """Normalized products of two linear forms in x, y, z over F_{p^2}, with a flag
    recording whether x = 0 is one of the two lines."""
    K = make_extension(p, 2)
    lines = list(naive_points(K, 3))
    x = gens(K, 3)
    out = {}
    for i, a in enumerate(lines):
        la = MultiPoly.linear_form(K, a)
        for b in lines[i:]:
            prod = (la * MultiPoly.linear_form(K, b)).normalized()
            has_x = tuple(a) == (1, 0, 0) or tuple(b) == (1, 0, 0)
            out[prod] = out.get(prod, False) or has_x
    del x
    return K, out


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
