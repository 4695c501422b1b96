"""Sparse multivariate polynomials with exact coefficients.

A :class:`MultiPoly` is an immutable map from exponent tuples to nonzero
field elements.  Equality is canonical-form equality: same field, same
number of variables, same term map.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

from ..errors import InputError
from .fields import FieldSpec, embedding

Exponent = tuple[int, ...]


class MultiPoly:
    __slots__ = ("field", "nvars", "_terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if nvars < 0:
            raise InputError("number of variables must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, object] = {}
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise InputError(f"exponent {exp} does not fit {nvars} variables")
            c = field.coerce(coeff)
            if exp in clean:
                c = field.add(clean[exp], c)
            clean[exp] = c
        self.field = field
        self.nvars = nvars
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, field, nvars, terms: dict) -> "MultiPoly":
        # terms already canonical: coerced, nonzero
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, value):
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field, nvars, index):
        if not 0 <= index < nvars:
            raise InputError(f"variable index {index} out of range")
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(field, nvars, {tuple(exp): field.one})

    @classmethod
    def linear_form(cls, field, coeffs: Sequence):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(field, n, terms)

    @classmethod
    def monomials(cls, nvars: int, degree: int) -> list[Exponent]:
        """All exponent vectors of the given total degree, lexicographically descending."""
        return _monomials(nvars, degree)

    # -- inspection --------------------------------------------------------

    def terms(self) -> list[tuple[Exponent, object]]:
        """Terms sorted by exponent, lexicographically descending."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exp: Exponent):
        return self._terms.get(tuple(exp), self.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    def leading(self) -> tuple[Exponent, object]:
        if not self._terms:
            raise InputError("zero polynomial has no leading term")
        exp = max(self._terms)
        return exp, self._terms[exp]

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int,)) and not isinstance(other, bool):
            return self == MultiPoly.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.field}, {self.nvars}, {self.to_string()})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(exp) if k
            )
            lit = self.field.to_literal(c)
            if isinstance(lit, list):
                lit = "(" + ",".join(lit) + ")"
            parts.append(f"{lit}*{mono}" if mono else lit)
        return " + ".join(parts)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.field != self.field or other.nvars != self.nvars:
            raise InputError("polynomials live in different rings")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = F.add(out[e], c) if e in out else c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly._raw(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly._raw(F, self.nvars, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, scalar) -> "MultiPoly":
        F = self.field
        s = F.coerce(scalar)
        if s == 0:
            return MultiPoly.zero(F, self.nvars)
        return MultiPoly._raw(F, self.nvars, {e: F.mul(c, s) for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out: dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = F.mul(c1, c2)
                out[e] = F.add(out[e], prod) if e in out else prod
        return MultiPoly._raw(F, self.nvars, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative power")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def normalized(self) -> "MultiPoly":
        """Scalar multiple whose leading coefficient is 1."""
        if not self._terms:
            return self
        _, lc = self.leading()
        return self.scale(self.field.inv(lc))

    def is_scalar_multiple_of(self, other: "MultiPoly") -> bool:
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalized() == other.normalized()

    # -- calculus and substitution -----------------------------------------

    def partial(self, index: int) -> "MultiPoly":
        """Formal partial derivative (exponent reduced into the field)."""
        F = self.field
        out = {}
        for e, c in self._terms.items():
            k = e[index]
            if k == 0:
                continue
            d = F.mul(c, F.from_int(k))
            if d == 0:
                continue
            ne = list(e)
            ne[index] = k - 1
            out[tuple(ne)] = d
        return MultiPoly._raw(F, self.nvars, out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence) -> object:
        return evaluate(self, point)

    __call__ = evaluate

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace variable ``i`` by ``images[i]`` (all in one target ring)."""
        if len(images) != self.nvars:
            raise InputError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0]
        for im in images:
            if im.field != self.field or im.nvars != target.nvars:
                raise InputError("substitution images must share one ring")
        F = self.field
        powers: list[dict[int, MultiPoly]] = [{} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] if k == 1 else power(i, k - 1) * images[i]
            return cache[k]

        acc: dict[Exponent, object] = {}
        for e, c in self._terms.items():
            term = MultiPoly.constant(F, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term._terms.items():
                acc[te] = F.add(acc[te], tc) if te in acc else tc
        return MultiPoly._raw(F, target.nvars, {e: c for e, c in acc.items() if c != 0})

    def substitute_linear(self, matrix: Sequence[Sequence]) -> "MultiPoly":
        """``f(M y)``: variable ``x_i`` becomes ``sum_j M[i][j] y_j``."""
        F = self.field
        forms = [MultiPoly.linear_form(F, [F.coerce(v) for v in row]) for row in matrix]
        return self.substitute(forms)

    def extend_vars(self, nvars: int) -> "MultiPoly":
        """Same polynomial in a ring with extra trailing variables."""
        if nvars < self.nvars:
            raise InputError("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly._raw(self.field, nvars, {e + pad: c for e, c in self._terms.items()})

    def change_field(self, field: FieldSpec) -> "MultiPoly":
        """Base change (or reduction mod p for Q) of every coefficient."""
        if field == self.field:
            return self
        emb = embedding(self.field, field)
        out = {}
        for e, c in self._terms.items():
            v = emb(c)
            if v != 0:
                out[e] = v
        return MultiPoly._raw(field, self.nvars, out)


@functools.lru_cache(maxsize=256)
def _monomials(nvars: int, degree: int) -> list[Exponent]:
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def evaluate(f: MultiPoly, point: Sequence) -> object:
    """Exact value of ``f`` at ``point``."""
    if len(point) != f.nvars:
        raise InputError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    F = f.field
    pt = [F.coerce(v) for v in point]
    acc = F.zero
    pw_cache: dict[tuple[int, int], object] = {}
    for e, c in f._terms.items():
        term = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in pw_cache:
                    pw_cache[key] = F.pow(pt[i], k)
                term = F.mul(term, pw_cache[key])
                if term == 0:
                    break
        acc = F.add(acc, term)
    return acc


@dataclass(frozen=True)
class LineExpansion:
    """Coefficients of ``f(x_0 + t, x_1, ..., x_n) = sum_j P_j t^(e - j)``.

    ``coefficients[j]`` is ``P_j``, homogeneous of degree ``j`` or zero.
    """

    base_degree: int
    coefficients: tuple[MultiPoly, ...]

    def reconstruct(self) -> MultiPoly:
        """``sum_j P_j t^(e-j)`` as a polynomial with ``t`` appended as last variable."""
        first = self.coefficients[0]
        n = first.nvars
        e = self.base_degree
        out = MultiPoly.zero(first.field, n + 1)
        for j, pj in enumerate(self.coefficients):
            shifted = {exp + (e - j,): c for exp, c in pj._terms.items()}
            out = out + MultiPoly._raw(first.field, n + 1, shifted)
        return out


def restrict_to_line(f: MultiPoly) -> LineExpansion:
    """Expand ``f`` along the line ``[x_0 + t : x_1 : ... : x_n]``.

    Works by direct substitution ``x_0 -> x_0 + t`` with integer binomial
    coefficients, so it is valid in every characteristic (including p <= deg f).
    """
    if f.is_zero() or not f.is_homogeneous():
        raise InputError("restrict_to_line needs a nonzero homogeneous polynomial")
    e = f.degree
    if e < 1:
        raise InputError("restrict_to_line needs degree >= 1")
    F = f.field
    buckets: list[dict[Exponent, object]] = [{} for _ in range(e + 1)]
    for exp, c in f._terms.items():
        a = exp[0]
        rest = exp[1:]
        # (x0 + t)^a = sum_s C(a, s) x0^(a - s) t^s ; t^s lands in P_(e - s)
        for s in range(a + 1):
            coeff = F.mul(c, F.from_int(comb(a, s)))
            if coeff == 0:
                continue
            bucket = buckets[e - s]
            key = (a - s,) + rest
            bucket[key] = F.add(bucket[key], coeff) if key in bucket else coeff
    coeffs = tuple(
        MultiPoly._raw(F, f.nvars, {k: v for k, v in b.items() if v != 0}) for b in buckets
    )
    return LineExpansion(e, coeffs)


def random_homogeneous(field: FieldSpec, nvars: int, degree: int, rng, density: float = 1.0,
                       coeff_range: int = 9) -> MultiPoly:
    """Random homogeneous form; over Q coefficients are integers in [-coeff_range, coeff_range]."""
    terms = {}
    for exp in _monomials(nvars, degree):
        if density < 1.0 and rng.random() > density:
            continue
        if field.is_finite:
            terms[exp] = field.random_element(rng)
        else:
            terms[exp] = rng.randint(-coeff_range, coeff_range)
    return MultiPoly(field, nvars, terms)
