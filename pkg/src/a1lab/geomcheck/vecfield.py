"""numpy arithmetic on arrays of finite-field element encodings.

Uses the same integer encoding as :mod:`a1lab.exactalg.fields`, so arrays
can be converted to exact scalars with ``int()``.  Prime fields use modular
int64 arithmetic; extension fields use q x q tables when q is small and
log/digit arithmetic otherwise.
"""

from __future__ import annotations

import functools

import numpy as np

from ..errors import UnsupportedError
from ..exactalg.fields import ExtensionField, FieldSpec, PrimeField, primitive_power_tables
from ..exactalg.poly import MultiPoly

TABLE_MAX_Q = 1024
MAX_PRIME = 1 << 31


class VecField:
    def __init__(self, field: FieldSpec):
        if not field.is_finite:
            raise UnsupportedError(f"vectorized arithmetic needs a finite field, got {field}")
        self.field = field
        self.q = field.order
        self.p = field.characteristic
        if isinstance(field, PrimeField):
            if self.p >= MAX_PRIME:
                raise UnsupportedError("vectorized arithmetic supports p < 2^31")
            self.mode = "prime"
            return
        assert isinstance(field, ExtensionField)
        q, p, r = self.q, self.p, field.r
        exp, log = primitive_power_tables(field)
        self._exp = np.asarray(exp, dtype=np.int64)
        self._log = np.asarray(log, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self._digits = np.stack([(idx // p**i) % p for i in range(r)], axis=1)
        self._pw = np.asarray([p**i for i in range(r)], dtype=np.int64)
        self._neg = ((-self._digits) % p) @ self._pw
        inv = np.zeros(q, dtype=np.int64)
        nz = idx[1:]
        inv[1:] = self._exp[(q - 1 - self._log[nz]) % (q - 1)]
        self._inv = inv
        if q <= TABLE_MAX_Q:
            self.mode = "table"
            la = self._log[:, None]
            lb = self._log[None, :]
            mul = self._exp[(la + lb) % (2 * (q - 1))]
            mul[0, :] = 0
            mul[:, 0] = 0
            self._mul_tab = mul
            add = np.zeros((q, q), dtype=np.int64)
            for i in range(r):
                add += ((self._digits[:, None, i] + self._digits[None, :, i]) % p) * p**i
            self._add_tab = add
        else:
            self.mode = "log"

    # -- elementwise ops (arrays or python ints broadcast) ------------------

    def add(self, a, b):
        if self.mode == "prime":
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.mode == "table":
            return self._add_tab[a, b]
        da = self._digits[a]
        db = self._digits[b]
        return ((da + db) % self.p) @ self._pw

    def neg(self, a):
        if self.mode == "prime":
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.mode == "prime":
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self.mode == "table":
            return self._mul_tab[a, b]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[(self._log[a] + self._log[b]) % (2 * (self.q - 1))]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        if self.mode == "prime":
            a = np.asarray(a, dtype=np.int64)
            return np.where(a == 0, 0, _modpow(a, self.p - 2, self.p))
        return self._inv[a]

    def full(self, n: int, value: int):
        return np.full(n, int(value), dtype=np.int64)

    # -- polynomials ---------------------------------------------------------

    def compile(self, f: MultiPoly) -> "CompiledPoly":
        if f.field != self.field:
            raise UnsupportedError("polynomial field differs from the vector field")
        return CompiledPoly(
            f.nvars,
            tuple((int(c), tuple((i, k) for i, k in enumerate(e) if k)) for e, c in f.terms()),
        )

    def evaluate(self, cp: "CompiledPoly", coords, n: int):
        """Values of a compiled polynomial at ``n`` points given per-coordinate arrays."""
        acc = np.zeros(n, dtype=np.int64)
        powers: dict[tuple[int, int], np.ndarray] = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = coords[i] if k == 1 else self.mul(power(i, k - 1), coords[i])
            return powers[key]

        for c, mono in cp.terms:
            if not mono:
                term = self.full(n, c)
            else:
                term = None
                for i, k in mono:
                    term = power(i, k) if term is None else self.mul(term, power(i, k))
                if c != 1:
                    term = self.mul(term, c)
            acc = self.add(acc, term)
        return acc

    def poly_mul(self, a: list, b: list) -> list:
        """Product of univariate polynomials whose coefficients are arrays/ints."""
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod = self.mul(x, y)
                out[i + j] = prod if out[i + j] is None else self.add(out[i + j], prod)
        return out

    def compose(self, cp: "CompiledPoly", coord_polys: list[list], n: int) -> list:
        """Coefficients (low -> high in t) of ``f(X_0(t), ..., X_m(t))``.

        ``coord_polys[i]`` lists the t-coefficients of coordinate i; entries
        may be arrays of length n or python ints.
        """
        powers: dict[tuple[int, int], list] = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = coord_polys[i] if k == 1 else self.poly_mul(power(i, k - 1), coord_polys[i])
            return powers[key]

        acc: list = []
        for c, mono in cp.terms:
            term = [c]
            for i, k in mono:
                term = self.poly_mul(term, power(i, k))
            while len(acc) < len(term):
                acc.append(np.zeros(n, dtype=np.int64))
            for d, coeff in enumerate(term):
                acc[d] = self.add(acc[d], coeff)
        return [np.broadcast_to(np.asarray(a, dtype=np.int64), (n,)) for a in acc]

    # -- linear algebra --------------------------------------------------------

    def batch_rank(self, mats: np.ndarray) -> np.ndarray:
        """Ranks of a stack of matrices with shape (N, rows, cols)."""
        m = np.array(mats, dtype=np.int64, copy=True)
        n, rows, cols = m.shape
        rank = np.zeros(n, dtype=np.int64)
        ar = np.arange(n)
        row_idx = np.arange(rows)
        for col in range(cols):
            cand = (m[:, :, col] != 0) & (row_idx[None, :] >= rank[:, None])
            has = cand.any(axis=1)
            if not has.any():
                continue
            piv = np.argmax(cand, axis=1)
            sel = ar[has]
            rk = np.minimum(rank[sel], rows - 1)
            pv = piv[sel]
            top = m[sel, rk, :].copy()
            m[sel, rk, :] = m[sel, pv, :]
            m[sel, pv, :] = top
            pivot_row = m[sel, rk, :]
            inv = self.inv(pivot_row[:, col])
            pivot_row = self.mul(pivot_row, inv[:, None])
            m[sel, rk, :] = pivot_row
            for r in range(rows):
                below = r > rk
                factor = np.where(below, m[sel, r, col], 0)
                m[sel, r, :] = self.sub(m[sel, r, :], self.mul(pivot_row, factor[:, None]))
            rank[sel] += 1
        return rank


class CompiledPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        self.nvars = nvars
        self.terms = terms


def _modpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@functools.lru_cache(maxsize=32)
def vec_field(field: FieldSpec) -> VecField:
    return VecField(field)


def projective_chunks(q: int, m: int, chunk: int = 1 << 16):
    """Canonical representatives of P^m(F_q) as (N, m+1) int64 arrays.

    Order: position of the leading 1 ascending, then the trailing coordinates
    big-endian in encoding order.
    """
    for lead in range(m + 1):
        free = m - lead
        total = q**free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            pts = np.zeros((len(idx), m + 1), dtype=np.int64)
            pts[:, lead] = 1
            for j in range(free):
                pts[:, lead + 1 + j] = (idx // q ** (free - 1 - j)) % q
            yield pts


def projective_size(q: int, m: int) -> int:
    if m < 0:
        return 0
    return sum(q**i for i in range(m + 1))
