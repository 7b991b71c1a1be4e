"""Finite fields GF(p^m) with vectorised numpy arithmetic.

Elements are plain integers in ``[0, q)``. The integer ``sum(c_i * p**i)``
encodes the polynomial ``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` modulo the
field modulus, so ``0`` and ``1`` are the additive and multiplicative
identities in every field. All methods accept ints or integer arrays and
broadcast like numpy ufuncs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 1 << 16
# add/sub lookup tables are only built below this order (q*q entries)
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``p**m``; raises FieldError when q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not _is_prime(p):
                break
            return p, m
    raise FieldError(f"{q} is not a prime power")


# -- dense polynomials over GF(p), coefficient lists in ascending degree --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _polymod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    f = _trim(f)
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) >= len(f):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(f)
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _polymod(prod, f, p)


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _trim([int(c) % p for c in poly])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for code in range(p**d):
            g = [(code // p**i) % p for i in range(d)] + [1]
            if not _polymod(f, g, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """The monic irreducible of degree ``m`` with the smallest encoding.

    Candidates ``x^m + c_{m-1} x^{m-1} + ... + c_0`` are scanned in
    increasing order of ``sum(c_i p^i)``.
    """
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        f = [(code // p**i) % p for i in range(m)] + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible of degree {m} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic, extension degree and modulus (ascending, monic)."""

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m


class GF:
    """The finite field GF(p^m).

    >>> F = GF(2, 2)
    >>> F.mul(2, 2), F.mul(2, 3)
    (3, 1)
    """

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if p**m > MAX_ORDER:
            raise FieldError(f"field order {p}^{m} exceeds {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")

        self.spec = FieldSpec(p, m, modulus)
        self.p, self.m, self.modulus = p, m, modulus
        self.q = q = p**m
        self.dtype = np.int64

        powers = p ** np.arange(m, dtype=np.int64)
        self._powers = powers
        # digit table: element -> coefficient vector
        self._digits = (np.arange(q, dtype=np.int64)[:, None] // powers) % p

        self.primitive = self._find_primitive()
        self._build_log_tables()

        if p == 2 or m == 1:
            self._add_table = self._sub_table = None
        elif q <= _ADD_TABLE_LIMIT:
            d = self._digits
            self._add_table = ((d[:, None, :] + d[None, :, :]) % p) @ powers
            self._sub_table = ((d[:, None, :] - d[None, :, :]) % p) @ powers
        else:
            self._add_table = self._sub_table = None

        # x^d mod f for d < 2m-1, as digit rows; used by the matmul reduction
        red = np.zeros((max(2 * m - 1, 1), m), dtype=np.int64)
        for d in range(2 * m - 1):
            mono = _polymod([0] * d + [1], list(modulus), p)
            red[d, : len(mono)] = mono
        self._reduction = red

    # ---------------------------------------------------------------- set-up

    def _slow_mul(self, a: int, b: int) -> int:
        da = [int(c) for c in self._digits[a]]
        db = [int(c) for c in self._digits[b]]
        r = _polymulmod(da, db, list(self.modulus), self.p)
        return sum(c * self.p**i for i, c in enumerate(r))

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        q = self.q
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _const_mul_matrix(self, c: int) -> np.ndarray:
        """GF(p)-matrix of x -> c*x acting on digit row vectors."""
        # row j: digits of c * x^j, x^j being encoded as p^j
        rows = [self._digits[self._slow_mul(c, int(self._powers[j]))] for j in range(self.m)]
        return np.array(rows, dtype=np.int64)

    def _build_log_tables(self) -> None:
        q, p = self.q, self.p
        n = q - 1
        exp_digits = np.zeros((1, self.m), dtype=np.int64)
        exp_digits[0, 0] = 1
        g_pow = self.primitive
        while exp_digits.shape[0] < n:
            M = self._const_mul_matrix(g_pow)
            exp_digits = np.vstack([exp_digits, (exp_digits @ M) % p])
            g_pow = self._slow_mul(g_pow, g_pow)
        exp = exp_digits[:n] @ self._powers
        if len(np.unique(exp)) != n:  # pragma: no cover
            raise FieldError("primitive element check failed")
        self._exp = np.concatenate([exp, exp, exp[:1]])
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(n)
        self._log = log

    # ------------------------------------------------------------- utilities

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def check_same(self, other: GF) -> None:
        if self != other:
            raise FieldError(f"field mismatch: {self!r} vs {other!r}")

    def asarray(self, x) -> np.ndarray:
        a = np.asarray(x, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise FieldError(f"entries must lie in [0, {self.q})")
        return a

    def digits(self, x) -> np.ndarray:
        """Coefficient vectors, shape ``x.shape + (m,)``."""
        return self._digits[np.asarray(x, dtype=np.int64)]

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self._powers

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def subfield_elements(self, order: int) -> np.ndarray:
        """Elements of the subfield of the given order, in encoding order."""
        p2, r = prime_power(order)
        if p2 != self.p or self.m % r:
            raise FieldError(f"GF({order}) is not a subfield of {self!r}")
        x = self.elements()
        return x[self.pow(x, order) == x]

    # ------------------------------------------------------------ arithmetic

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a, b]
        return self.from_digits(self._digits[a] + self._digits[b])

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return self.from_digits(-self._digits[a])

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a - b) % self.p
        if self._sub_table is not None:
            return self._sub_table[a, b]
        return self.from_digits(self._digits[a] - self._digits[b])

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """``a**e`` elementwise; negative exponents invert, ``0**0 == 1``."""
        a = np.asarray(a, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        if np.any((a == 0) & (e < 0)):
            raise ZeroDivisionError("negative power of zero")
        n = self.q - 1
        r = self._exp[(self._log[a] * (e % n)) % n]
        return np.where(a == 0, np.where(e == 0, 1, 0), r)

    def arith(self, op: str, x, y):
        """Dispatch ``op`` in {add, sub, mul, inv, pow}; ``y`` ignored for inv."""
        if op == "inv":
            return self.inv(x)
        if op not in ("add", "sub", "mul", "pow"):
            raise FieldError(f"unknown operation {op!r}")
        return getattr(self, op)(x, y)

    def sum(self, a, axis=None):
        """Field sum along an axis."""
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        d = self._digits[a]
        if axis is None:
            return self.from_digits(d.reshape(-1, self.m).sum(axis=0))
        ax = axis if axis >= 0 else a.ndim + axis
        return self.from_digits(d.sum(axis=ax))

    def prod(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if axis is None:
            a, axis = a.ravel(), 0
        zero = np.any(a == 0, axis=axis)
        logs = self._log[a].sum(axis=axis) % (self.q - 1)
        return np.where(zero, 0, self._exp[logs])

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over the field.

        Extension fields are handled digit-plane-wise: each product of
        coefficient planes is an exact float64 BLAS product reduced mod p.
        """
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.ndim == 1:
            return self.matmul(A[None, :], B)[0]
        if B.ndim == 1:
            return self.matmul(A, B[:, None])[:, 0]
        r, k = A.shape
        k2, c = B.shape
        if k != k2:
            raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
        if r == 0 or c == 0 or k == 0:
            return np.zeros((r, c), dtype=np.int64)
        p, m = self.p, self.m
        if m == 1:
            return _modp_matmul(A, B, p)
        Ad = self._digits[A]
        Bd = self._digits[B]
        planes = np.zeros((2 * m - 1, r, c), dtype=np.int64)
        for s in range(m):
            for u in range(m):
                planes[s + u] += _modp_matmul(Ad[:, :, s], Bd[:, :, u], p)
        # fold x^d back into the basis 1, x, ..., x^{m-1}
        out = np.tensordot(planes % p, self._reduction, axes=([0], [0])) % p
        return out @ self._powers

    # ----------------------------------------------------------------- misc

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        return n // int(np.gcd(int(self._log[a]), n))

    def random(self, rng: np.random.Generator, shape, nonzero: bool = False) -> np.ndarray:
        if nonzero:
            return rng.integers(1, self.q, size=shape, dtype=np.int64)
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def serialize(self) -> str:
        return "GF {} {} {}".format(self.p, self.m, " ".join(map(str, self.modulus)))

    @classmethod
    def parse(cls, line: str) -> GF:
        parts = line.split()
        if len(parts) < 3 or parts[0] != "GF":
            raise FieldError(f"bad field line: {line!r}")
        p, m = int(parts[1]), int(parts[2])
        coeffs = [int(c) for c in parts[3:]]
        if len(coeffs) != m + 1:
            raise FieldError(f"field line needs {m + 1} modulus coefficients: {line!r}")
        return field(p, m, tuple(coeffs))


def _modp_matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact ``A @ B mod p`` for entries in [0, p) via float64 BLAS."""
    k = A.shape[1]
    chunk = max(1, int(2**52 // ((p - 1) ** 2 or 1)))
    Af = A.astype(np.float64)
    Bf = B.astype(np.float64)
    if k <= chunk:
        return np.fmod(Af @ Bf, p).astype(np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, k, chunk):
        out = (out + np.fmod(Af[:, s:s + chunk] @ Bf[s:s + chunk], p).astype(np.int64)) % p
    return out


@functools.lru_cache(maxsize=None)
def field(p: int, m: int = 1, modulus: tuple[int, ...] | None = None) -> GF:
    """Cached field constructor; equal arguments give the same object."""
    return GF(p, m, modulus)


def field_of_order(q: int, modulus: tuple[int, ...] | None = None) -> GF:
    p, m = prime_power(q)
    return field(p, m, modulus)
