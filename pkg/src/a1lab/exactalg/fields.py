"""Exact scalar fields: Q, F_p and small extensions F_{p^r}.

Elements are plain hashable Python values so that polynomials can keep them
in dicts: ``Fraction`` for Q and an ``int`` in ``[0, q)`` for finite fields.
An element ``c_0 + c_1 a + ... + c_{r-1} a^{r-1}`` of ``F_p[a]/(m(a))`` is
encoded as the integer ``c_0 + c_1 p + ... + c_{r-1} p^{r-1}``, so the prime
subfield is exactly ``0..p-1`` and base change from F_p is the identity.
"""

from __future__ import annotations

import functools
import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator

from ..errors import InputError, ReductionError, UnsupportedError

MAX_EXTENSION_DEGREE = 4
_TABLE_LIMIT = 1 << 22

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- univariate helpers over F_p, coefficient lists low -> high ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        shift = len(a) - 1 - dm
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _upoly_eval(a, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_irreducible(modulus, p: int) -> bool:
    """Irreducibility of a monic polynomial of degree <= 4 over F_p.

    Exhaustive: degree 2 and 3 need no root; degree 4 additionally needs no
    monic irreducible quadratic factor.
    """
    m = [c % p for c in modulus]
    r = len(m) - 1
    if r < 1 or m[-1] != 1:
        return False
    if r == 1:
        return True
    if r > MAX_EXTENSION_DEGREE:
        raise UnsupportedError(f"irreducibility test supports degree <= {MAX_EXTENSION_DEGREE}")
    if any(_upoly_eval(m, x, p) == 0 for x in range(p)):
        return False
    if r == 4:
        for c0, c1 in itertools.product(range(p), repeat=2):
            quad = [c0, c1, 1]
            if any(_upoly_eval(quad, x, p) == 0 for x in range(p)):
                continue
            if not _upoly_mod(m, quad, p):
                return False
    return True


class FieldSpec(ABC):
    """A field with exact arithmetic on plain Python element values."""

    kind: str

    @property
    @abstractmethod
    def characteristic(self) -> int: ...

    @property
    def order(self) -> int | None:
        return None

    @property
    def degree(self) -> int:
        return 1

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    @abstractmethod
    def coerce(self, value): ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def inv(self, a): ...

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return self.coerce(n)

    def elements(self) -> Iterator:
        raise UnsupportedError(f"{self} is infinite")

    def random_element(self, rng):
        raise UnsupportedError(f"cannot draw uniformly from {self}")

    @abstractmethod
    def to_literal(self, a) -> Any: ...

    @abstractmethod
    def from_literal(self, obj): ...

    @abstractmethod
    def to_json(self) -> dict: ...

    def __call__(self, value):
        return self.coerce(value)


@dataclass(frozen=True)
class RationalField(FieldSpec):
    kind = "rationals"

    @property
    def characteristic(self) -> int:
        return 0

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise InputError("booleans are not field elements")
        if isinstance(value, (int, str)):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad rational literal {value!r}") from exc
        raise InputError(f"cannot coerce {value!r} into Q")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def sub(self, a, b):
        return a - b

    def to_literal(self, a) -> str:
        return str(a)

    def from_literal(self, obj):
        if isinstance(obj, list):
            raise InputError("rational coefficients are strings like '3' or '-2/5'")
        return self.coerce(str(obj).strip())

    def to_json(self) -> dict:
        return {"kind": "rationals"}

    def __str__(self) -> str:
        return "Q"


def _reduce_rational(value: Fraction, p: int) -> int:
    if value.denominator % p == 0:
        raise ReductionError(f"denominator of {value} is divisible by {p}")
    return value.numerator * pow(value.denominator, -1, p) % p


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    p: int
    kind = "prime"

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p >= 1 << 64 or not is_prime(self.p):
            raise InputError(f"{self.p!r} is not a prime below 2^64")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def coerce(self, value):
        if isinstance(value, bool):
            raise InputError("booleans are not field elements")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return _reduce_rational(value, self.p)
        if isinstance(value, str):
            return self.coerce(RationalField().coerce(value.strip()))
        raise InputError(f"cannot coerce {value!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random_element(self, rng) -> int:
        return rng.randrange(self.p)

    def frobenius(self, a):
        return a

    def to_literal(self, a) -> str:
        return str(a)

    def from_literal(self, obj):
        if isinstance(obj, list):
            if len(obj) != 1:
                raise InputError(f"F_{self.p} coefficient must be a single residue")
            obj = obj[0]
        return self.coerce(obj if isinstance(obj, int) else str(obj))

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __str__(self) -> str:
        return f"F_{self.p}"


@dataclass(frozen=True)
class ExtensionField(FieldSpec):
    """F_{p^r} = F_p[a]/(modulus); modulus is monic, coefficients low -> high."""

    p: int
    r: int
    modulus: tuple[int, ...]
    kind = "extension"

    def __post_init__(self):
        if not is_prime(self.p) or self.p >= 1 << 64:
            raise InputError(f"{self.p!r} is not a prime below 2^64")
        if not 2 <= self.r <= MAX_EXTENSION_DEGREE:
            raise UnsupportedError(f"extension degree must lie in 2..{MAX_EXTENSION_DEGREE}")
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.r + 1 or mod[-1] != 1:
            raise InputError(f"modulus must be monic of degree {self.r}")
        if not is_irreducible(mod, self.p):
            raise InputError(f"modulus {mod} is reducible over F_{self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p ** self.r

    @property
    def degree(self) -> int:
        return self.r

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.r):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_digits(self, digits) -> int:
        acc = 0
        for c in reversed(list(digits)):
            acc = acc * self.p + c % self.p
        return acc

    def coerce(self, value):
        # ints in [0, q) are already-encoded elements; negative ints are integers
        if isinstance(value, bool):
            raise InputError("booleans are not field elements")
        if isinstance(value, int):
            if 0 <= value < self.order:
                return value
            if value < 0:
                return value % self.p
            raise InputError(f"{value} is not an element encoding of {self}")
        if isinstance(value, Fraction):
            return _reduce_rational(value, self.p)
        if isinstance(value, (list, tuple)):
            if len(value) > self.r:
                raise InputError(f"residue vector longer than {self.r}")
            return self.from_digits(PrimeField(self.p).coerce(v) for v in value)
        if isinstance(value, str):
            return self.coerce(RationalField().coerce(value.strip()))
        raise InputError(f"cannot coerce {value!r} into {self}")

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        p = self.p
        res, pw = 0, 1
        for _ in range(self.r):
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            res += (ca + cb) % p * pw
            pw *= p
        return res

    def neg(self, a):
        p = self.p
        res, pw = 0, 1
        for _ in range(self.r):
            a, c = divmod(a, p)
            res += -c % p * pw
            pw *= p
        return res

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        p, r = self.p, self.r
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_upoly_mod(prod, list(self.modulus), p) + [0] * r)

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    @functools.cached_property
    def _log_tables(self):
        q = self.order
        if q > _TABLE_LIMIT:
            return None
        exp, log = primitive_power_tables(self)
        return exp, log

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        tables = self._log_tables
        if tables is None:
            return self._mul_slow(a, b)
        exp, log = tables
        return exp[log[a] + log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        tables = self._log_tables
        if tables is None:
            return FieldSpec.pow(self, a, self.order - 2)
        exp, log = tables
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def pow(self, a, e: int):
        tables = self._log_tables
        if tables is None or a == 0:
            return FieldSpec.pow(self, a, e)
        exp, log = tables
        return exp[log[a] * e % (self.order - 1)]

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def random_element(self, rng) -> int:
        return rng.randrange(self.order)

    def frobenius(self, a):
        return self.pow(a, self.p)

    @property
    def generator(self) -> int:
        """The adjoined root ``a`` of the modulus."""
        return self.p

    def to_literal(self, a) -> list[str]:
        return [str(c) for c in self.digits(a)]

    def from_literal(self, obj):
        if isinstance(obj, (list, tuple)):
            return self.coerce([int(str(v)) for v in obj])
        return self.from_int(obj) if isinstance(obj, int) else self.coerce(str(obj))

    def to_json(self) -> dict:
        return {"kind": "extension", "p": self.p, "r": self.r, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        return f"F_{self.p}^{self.r}"


def primitive_power_tables(field: ExtensionField):
    """Powers of a primitive element: ``exp`` (doubled length) and ``log``.

    ``log[0]`` is -1.  Search order is by integer encoding, so the tables are
    deterministic for a given field.
    """
    q = field.order
    n = q - 1
    prime_factors = _factor(n)
    for g in range(2, q):
        if all(field._pow_slow(g, n // ell) != 1 for ell in prime_factors):
            break
    else:  # pragma: no cover - every finite field has a generator
        raise AssertionError("no primitive element found")
    exp = [0] * (2 * n)
    log = [-1] * q
    x = 1
    for i in range(n):
        exp[i] = x
        log[x] = i
        x = field._mul_slow(x, g)
    exp[n:] = exp[:n]
    return exp, log


def _factor(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def make_extension(p: int, r: int) -> FieldSpec:
    """Deterministic F_{p^r}: modulus is the first irreducible monic polynomial.

    Candidates ``x^r + c_{r-1}x^{r-1} + ... + c_0`` are scanned by increasing
    integer encoding ``c_0 + c_1 p + ...`` (so ``c_0`` varies fastest).
    """
    if not isinstance(r, int) or r < 1 or r > MAX_EXTENSION_DEGREE:
        raise UnsupportedError(f"extension degree {r!r} outside 1..{MAX_EXTENSION_DEGREE}")
    if not isinstance(p, int) or p >= 1 << 64 or not is_prime(p):
        raise InputError(f"{p!r} is not a prime below 2^64")
    if r == 1:
        return PrimeField(p)
    for idx in range(p ** r):
        coeffs = []
        for _ in range(r):
            idx, c = divmod(idx, p)
            coeffs.append(c)
        if coeffs[0] == 0:
            continue
        modulus = tuple(coeffs) + (1,)
        if is_irreducible(modulus, p):
            return ExtensionField(p, r, modulus)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_from_json(obj: dict) -> FieldSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("field must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "rationals":
        return RationalField()
    if kind == "prime":
        return PrimeField(int(obj["p"]))
    if kind == "extension":
        p, r = int(obj["p"]), int(obj["r"])
        if obj.get("modulus") is None:
            return make_extension(p, r)
        return ExtensionField(p, r, tuple(int(c) for c in obj["modulus"]))
    raise InputError(f"unknown field kind {kind!r}")


def parse_field_option(text: str) -> FieldSpec:
    """Parse the CLI form ``p`` or ``p,r``."""
    parts = [s.strip() for s in text.split(",")]
    try:
        nums = [int(s) for s in parts]
    except ValueError as exc:
        raise InputError(f"bad field option {text!r}; expected p or p,r") from exc
    if len(nums) == 1:
        return make_extension(nums[0], 1)
    if len(nums) == 2:
        return make_extension(nums[0], nums[1])
    raise InputError(f"bad field option {text!r}; expected p or p,r")


def extension_of(field: FieldSpec, s: int) -> FieldSpec:
    """The degree-``s`` extension of a finite field (standard modulus)."""
    if not field.is_finite:
        raise UnsupportedError("Q has no finite extensions here")
    return make_extension(field.characteristic, field.degree * s)


@functools.lru_cache(maxsize=64)
def embedding(src: FieldSpec, dst: FieldSpec) -> Callable:
    """Field homomorphism ``src -> dst`` used for base change.

    Q reduces modulo the characteristic; F_p sits inside every F_{p^r} as
    0..p-1; F_{p^a} -> F_{p^b} (a | b) sends the adjoined root to the first
    root of the modulus found in ``dst``.
    """
    if src == dst:
        return lambda a: a
    if isinstance(src, RationalField):
        if not dst.is_finite:
            raise UnsupportedError(f"no embedding {src} -> {dst}")
        return dst.coerce
    if not dst.is_finite or src.characteristic != dst.characteristic or dst.degree % src.degree:
        raise UnsupportedError(f"no embedding {src} -> {dst}")
    if isinstance(src, PrimeField):
        return lambda a: a
    root = None
    for cand in dst.elements():
        acc = dst.zero
        for c in reversed(src.modulus):
            acc = dst.add(dst.mul(acc, cand), c)
        if acc == 0:
            root = cand
            break
    if root is None:  # pragma: no cover - guaranteed by a | b
        raise AssertionError("modulus has no root in the larger field")
    powers = [dst.pow(root, i) for i in range(src.r)]

    def embed(a):
        acc = dst.zero
        for c, pw in zip(src.digits(a), powers):
            if c:
                acc = dst.add(acc, dst.mul(c, pw))
        return acc

    return embed
