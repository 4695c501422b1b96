"""Smooth complete intersection pairs (X, D) in P^n and their numeric criteria.

X is cut out by F_1..F_c of degrees d_1..d_c and the boundary D is X meet
{G = 0} with deg G = k.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .errors import ConstructionError, GenerationError, InputError
from .exactalg.fields import FieldSpec, PrimeField, field_from_json
from .exactalg.frames import line_values
from .exactalg.literals import poly_from_literal, poly_to_literal
from .exactalg.poly import MultiPoly, random_homogeneous
from .geomcheck.enumerate import canonical_key, child_rng, enumerate_solutions, sample_points
from .geomcheck.report import FAIL, INCONCLUSIVE, PASS, CheckReport
from .geomcheck.vecfield import projective_size, vec_field

FULL_ENUMERATION_LIMIT = 10**6
DEFAULT_BUDGET = 256
PAIR_RETRIES = 32
DEFAULT_CHECK_PRIME = 101


@dataclass(frozen=True)
class PairType:
    """Numeric type (d_1..d_c; k) of a pair in P^n."""

    n: int
    degrees: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @property
    def c(self) -> int:
        return len(self.degrees)

    @property
    def d(self) -> int:
        return sum(self.degrees) + self.k

    @property
    def sum_squares(self) -> int:
        return sum(d * d for d in self.degrees)

    def check(self, min_degree: int = 2) -> None:
        if self.c < 1:
            raise InputError("a pair needs at least one interior equation")
        if self.n < 2:
            raise InputError("ambient dimension n must be at least 2")
        if self.c + 1 > self.n:
            raise InputError(f"c + 1 = {self.c + 1} exceeds n = {self.n}")
        if any(d < min_degree for d in self.degrees):
            raise InputError(f"interior degrees must be >= {min_degree}")
        if self.k < 1:
            raise InputError("boundary degree k must be >= 1")

    def __str__(self) -> str:
        return f"({','.join(map(str, self.degrees))};{self.k}) in P^{self.n}"


@dataclass(frozen=True)
class CIPair:
    n: int
    degrees: tuple[int, ...]
    k: int
    F: tuple[MultiPoly, ...]
    G: MultiPoly
    field: FieldSpec
    min_degree: int = dc_field(default=2, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        object.__setattr__(self, "F", tuple(self.F))
        self.type.check(self.min_degree)
        if len(self.F) != len(self.degrees):
            raise InputError(f"{len(self.F)} interior equations for {len(self.degrees)} degrees")
        for i, (f, d) in enumerate(zip(self.F, self.degrees)):
            self._check_poly(f, d, f"F{i + 1}")
        self._check_poly(self.G, self.k, "G")

    def _check_poly(self, f: MultiPoly, degree: int, name: str):
        if f.field != self.field:
            raise InputError(f"{name} is over {f.field}, pair is over {self.field}")
        if f.nvars != self.n + 1:
            raise InputError(f"{name} has {f.nvars} variables, expected {self.n + 1}")
        if f.is_zero() or not f.is_homogeneous(degree):
            raise InputError(f"{name} is not a nonzero form of degree {degree}")

    @property
    def type(self) -> PairType:
        return PairType(self.n, self.degrees, self.k)

    @property
    def c(self) -> int:
        return len(self.degrees)

    @property
    def d(self) -> int:
        return self.type.d

    @property
    def nvars(self) -> int:
        return self.n + 1

    def over(self, field: FieldSpec) -> "CIPair":
        """Base change (reduction mod p for a pair over Q)."""
        if field == self.field:
            return self
        return CIPair(self.n, self.degrees, self.k, tuple(f.change_field(field) for f in self.F),
                      self.G.change_field(field), field, min_degree=self.min_degree)

    def on_interior(self, x) -> bool:
        """x in X and G(x) != 0."""
        return all(f(x) == 0 for f in self.F) and self.G(x) != 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degrees": list(self.degrees),
            "k": self.k,
            "field": self.field.to_json(),
            "F": [poly_to_literal(f) for f in self.F],
            "G": poly_to_literal(self.G),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CIPair":
        if not isinstance(obj, dict):
            raise InputError("pair file must hold a JSON object")
        missing = {"n", "degrees", "k", "field", "F", "G"} - set(obj)
        if missing:
            raise InputError(f"pair file lacks {sorted(missing)}")
        field = field_from_json(obj["field"])
        n = obj["n"]
        if not isinstance(n, int) or not isinstance(obj["degrees"], list) or not isinstance(obj["F"], list):
            raise InputError("n must be an int; degrees and F must be arrays")
        F = tuple(poly_from_literal(f, field, n + 1) for f in obj["F"])
        G = poly_from_literal(obj["G"], field, n + 1)
        degrees = tuple(int(d) for d in obj["degrees"])
        min_degree = min(2, *degrees) if degrees else 2
        return cls(n, degrees, int(obj["k"]), F, G, field, min_degree=max(1, min_degree))


def load_pair(path: str | os.PathLike) -> CIPair:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return CIPair.from_json(obj)


def dump_pair(pair: CIPair) -> str:
    return json.dumps(pair.to_json(), indent=1, sort_keys=True)


# -- numeric criteria ---------------------------------------------------------

@dataclass(frozen=True)
class CriteriaReport:
    d: int
    sum_squares: int
    log_fano: bool
    a1_simply_connected_bound: bool
    cover_bound: bool
    affine_space_flag: bool = False

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "sum_squares": self.sum_squares,
            "log_fano": self.log_fano,
            "a1_simply_connected_bound": self.a1_simply_connected_bound,
            "cover_bound": self.cover_bound,
            "affine_space_flag": self.affine_space_flag,
        }


def criteria(pair: CIPair | PairType) -> CriteriaReport:
    """Log Fano (d <= n), the conic bound (k = 1, sum d_i^2 <= n) and the cover bound
    (sum d_i^2 + k^2 <= n + 1)."""
    t = pair.type if isinstance(pair, CIPair) else pair
    s = t.sum_squares
    return CriteriaReport(
        d=t.d,
        sum_squares=s,
        log_fano=t.d <= t.n,
        a1_simply_connected_bound=t.k == 1 and s <= t.n,
        cover_bound=s + t.k * t.k <= t.n + 1,
        affine_space_flag=t.c == 0,
    )


def cover_type(t: PairType) -> PairType:
    return PairType(t.n + 1, t.degrees + (t.k,), 1)


def universal_cover(pair: CIPair) -> CIPair:
    """The degree-k cyclic cover {F_1 = ... = F_c = y^k - G = 0} in P^{n+1}, boundary {y = 0}."""
    F = pair.field
    p = F.characteristic
    if p and pair.k % p == 0:
        raise ConstructionError(f"characteristic {p} divides k = {pair.k}; y^k - G is not reduced")
    nv = pair.n + 2
    y = MultiPoly.variable(F, nv, nv - 1)
    branch = y ** pair.k - pair.G.extend_vars(nv)
    interior = tuple(f.extend_vars(nv) for f in pair.F) + (branch,)
    return CIPair(pair.n + 1, pair.degrees + (pair.k,), 1, interior, y, F,
                  min_degree=min(pair.min_degree, pair.k))


# -- validation -----------------------------------------------------------------

def _ranks(field, equations, points) -> np.ndarray:
    if not points:
        return np.zeros(0, dtype=np.int64)
    vf = vec_field(field)
    arr = np.asarray(points, dtype=np.int64)
    coords = [arr[:, j] for j in range(arr.shape[1])]
    n = arr.shape[0]
    mats = np.zeros((n, len(equations), arr.shape[1]), dtype=np.int64)
    for r, f in enumerate(equations):
        for j in range(f.nvars):
            mats[:, r, j] = vf.evaluate(vf.compile(f.partial(j)), coords, n)
    return vf.batch_rank(mats)


def validate_pair(pair: CIPair, field: FieldSpec | None = None, sample_budget: int = DEFAULT_BUDGET,
                  *, seed: int = 0, threads: int = 1) -> CheckReport:
    """Jacobian smoothness check of X and D at F_q-points.

    Every point of X(F_q) and D(F_q) is examined when |P^n(F_q)| <= 10^6,
    otherwise ``sample_budget`` seeded points of each.  Passing is evidence,
    not proof.
    """
    t0 = time.perf_counter()
    if sample_budget < 1:
        raise InputError("sample budget must be >= 1")
    target = field or pair.field
    if not target.is_finite:
        raise InputError("validation needs a finite field; pass one explicitly for pairs over Q")
    P = pair.over(target)
    interior_eqs = list(P.F)
    boundary_eqs = interior_eqs + [P.G]
    size = projective_size(target.order, P.n)
    if size <= FULL_ENUMERATION_LIMIT:
        mode = "enumeration"
        xs = enumerate_solutions(interior_eqs, target, threads=threads)
        ds = enumerate_solutions(boundary_eqs, target, threads=threads)
    else:
        mode = "sampling"
        xs = sorted(sample_points(interior_eqs, target, sample_budget, child_rng(seed, "validate", "X")),
                    key=canonical_key)
        ds = sorted(sample_points(boundary_eqs, target, sample_budget, child_rng(seed, "validate", "D")),
                    key=canonical_key)
    details = {"mode": mode, "interior_points": len(xs), "boundary_points": len(ds),
               "type": str(P.type), "field": str(target)}
    elapsed = lambda: (time.perf_counter() - t0) * 1e3  # noqa: E731
    if not xs:
        return CheckReport(INCONCLUSIVE, target, seed=seed, message="X has no F_q-points to examine",
                           details=details, wall_time_ms=elapsed())
    x_ranks = _ranks(target, interior_eqs, xs)
    d_ranks = _ranks(target, boundary_eqs, ds)
    witness, message = None, ""
    bad_x = np.nonzero(x_ranks != P.c)[0]
    bad_d = np.nonzero(d_ranks != P.c + 1)[0]
    if bad_x.size:
        witness = xs[int(bad_x[0])]
        message = f"X is singular at this point: Jacobian rank {int(x_ranks[bad_x[0]])} < {P.c}"
    elif bad_d.size:
        witness = ds[int(bad_d[0])]
        message = f"D is singular at this point: Jacobian rank {int(d_ranks[bad_d[0]])} < {P.c + 1}"
    details["interior_violations"] = int(bad_x.size)
    details["boundary_violations"] = int(bad_d.size)
    return CheckReport(
        FAIL if witness is not None else PASS,
        target,
        points_examined=len(xs) + len(ds),
        solutions_found=len(xs),
        solutions=xs,
        codim_observed=int(x_ranks.max()),
        seed=seed,
        witness=witness,
        message=message,
        details=details,
        wall_time_ms=elapsed(),
    )


def random_pair(n: int, degrees, k: int, field: FieldSpec, seed: int, *,
                check_field: FieldSpec | None = None, sample_budget: int = DEFAULT_BUDGET,
                retries: int = PAIR_RETRIES) -> CIPair:
    """Seeded dense random pair that passes :func:`validate_pair`.

    Over Q coefficients are small integers and validation happens modulo
    ``check_field`` (default F_101).
    """
    t = PairType(n, tuple(degrees), k)
    t.check()
    check = check_field or (field if field.is_finite else PrimeField(DEFAULT_CHECK_PRIME))
    rng = child_rng(seed, "random_pair", str(t), str(field))
    last = None
    for attempt in range(retries):
        try:
            F = tuple(random_homogeneous(field, n + 1, d, rng) for d in t.degrees)
            G = random_homogeneous(field, n + 1, k, rng)
            pair = CIPair(n, t.degrees, k, F, G, field)
        except InputError as exc:
            last = str(exc)
            continue
        report = validate_pair(pair, check, sample_budget, seed=seed + attempt)
        if report.passed:
            return pair
        last = report.message or report.verdict
    raise GenerationError(f"no smooth {t} over {field} after {retries} draws; last: {last}")


def line_in_variety(pair: CIPair, p, q) -> bool:
    """Whether the line through p and q lies in X (all line coefficients vanish)."""
    return all(all(v == 0 for v in line_values(f, p, q)) for f in pair.F)


def probe_general_lines(pair: CIPair, field: FieldSpec | None = None, samples: int = 50,
                        seed: int = 0) -> dict:
    """Lines through random point pairs of X should not lie in X; counts violations."""
    target = field or pair.field
    P = pair.over(target)
    rng = child_rng(seed, "line_probe")
    pts = sample_points(list(P.F), target, 2 * samples + 8, rng)
    violations = []
    tested = 0
    for a, b in zip(pts[0::2], pts[1::2]):
        if tested == samples:
            break
        tested += 1
        if line_in_variety(P, a, b):
            violations.append((a, b))
    return {"tested": tested, "violations": violations}
