"""Algebraic code families: generalised Reed-Solomon and one-point Hermitian."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .codes import CodeError, LinearCode, code_from_rows
from .gf import GF, field_of_order, prime_power


@dataclass(frozen=True, eq=False)
class GrsSpec:
    """``GRS_k(a, b)``: polynomials of degree < k at points ``a``, scaled by ``b``."""

    field: GF
    a: np.ndarray
    b: np.ndarray
    k: int

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.int64)
        b = np.asarray(self.b, dtype=np.int64)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        n = a.shape[0]
        if b.shape != (n,):
            raise CodeError("points and multipliers must have equal length")
        if len(np.unique(a)) != n:
            raise CodeError("evaluation points must be pairwise distinct")
        if np.any(b == 0):
            raise CodeError("multipliers must be nonzero")
        if not 0 <= self.k <= n or n > self.field.q:
            raise CodeError(f"need 0 <= k <= n <= q, got k={self.k}, n={n}, q={self.field.q}")
        self.field.asarray(a)
        self.field.asarray(b)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def genus(self) -> int:
        return 0

    @property
    def degree(self) -> int:
        return self.k - 1

    def with_k(self, k: int) -> GrsSpec:
        return GrsSpec(self.field, self.a, self.b, k)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GrsSpec) and self.field == other.field and self.k == other.k
                and np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b))


def vandermonde(F: GF, a, rows: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return F.pow(a[None, :], np.arange(rows, dtype=np.int64)[:, None])


def grs_matrix(F: GF, a, b, k: int) -> np.ndarray:
    """Row j is ``(b_1 a_1^j, ..., b_n a_n^j)``."""
    return F.mul(vandermonde(F, a, k), np.asarray(b, dtype=np.int64)[None, :])


def grs_code(spec: GrsSpec) -> LinearCode:
    return code_from_rows(spec.field, grs_matrix(spec.field, spec.a, spec.b, spec.k), spec.n)


def dual_multipliers(F: GF, a, b) -> np.ndarray:
    """``c_i = 1 / (b_i prod_{j != i} (a_i - a_j))``, so GRS_k(a,b)^⊥ = GRS_{n-k}(a,c)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    diff = F.sub(a[:, None], a[None, :])
    np.fill_diagonal(diff, 1)
    return F.inv(F.mul(b, F.prod(diff, axis=1)))


def grs_dual(spec: GrsSpec) -> GrsSpec:
    return GrsSpec(spec.field, spec.a, dual_multipliers(spec.field, spec.a, spec.b),
                   spec.n - spec.k)


def grs_square_spec(spec: GrsSpec) -> GrsSpec:
    """Spec of ``GRS_{2k-1}(a, b*b)``, clipped at length n."""
    F = spec.field
    return GrsSpec(F, spec.a, F.mul(spec.b, spec.b), min(2 * spec.k - 1, spec.n))


def random_grs_spec(F: GF, n: int, k: int, rng: np.random.Generator) -> GrsSpec:
    """Distinct random points and nonzero random multipliers."""
    a = rng.permutation(F.q)[:n].astype(np.int64)
    b = F.random(rng, n, nonzero=True)
    return GrsSpec(F, a, b, k)


# ---------------------------------------------------------------- Hermitian


@dataclass(frozen=True)
class HermitianSpec:
    """One-point code ``C(X, P, m P_inf)`` on ``y^q0 + y = x^(q0+1)`` over GF(q0^2)."""

    q0: int
    m: int

    def __post_init__(self):
        prime_power(self.q0)
        if self.m < 0:
            raise CodeError("divisor degree must be >= 0")

    @property
    def field(self) -> GF:
        return field_of_order(self.q0 * self.q0)

    @property
    def n(self) -> int:
        return self.q0**3

    @property
    def genus(self) -> int:
        return self.q0 * (self.q0 - 1) // 2

    @property
    def degree(self) -> int:
        return self.m

    @property
    def dimension(self) -> int:
        return hermitian_code(self).k

    def with_m(self, m: int) -> HermitianSpec:
        return HermitianSpec(self.q0, m)


@functools.lru_cache(maxsize=None)
def hermitian_points(q0: int) -> np.ndarray:
    """Affine points ``(x, y)`` sorted by encoded x then encoded y, shape (q0^3, 2)."""
    F = field_of_order(q0 * q0)
    xs, ys = np.meshgrid(F.elements(), F.elements(), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    on_curve = F.add(F.pow(ys, q0), ys) == F.pow(xs, q0 + 1)
    pts = np.stack([xs[on_curve], ys[on_curve]], axis=1)
    if pts.shape[0] != q0**3:  # pragma: no cover
        raise AssertionError("Hermitian curve point count mismatch")
    pts.flags.writeable = False
    return pts


def hermitian_monomials(q0: int, m: int) -> list[tuple[int, int]]:
    """Exponents ``(i, j)`` with ``j < q0`` and ``i q0 + j (q0+1) <= m``."""
    out = []
    for j in range(q0):
        i = 0
        while i * q0 + j * (q0 + 1) <= m:
            out.append((i, j))
            i += 1
    return sorted(out, key=lambda e: (e[0] * q0 + e[1] * (q0 + 1), e[1]))


def hermitian_matrix(spec: HermitianSpec) -> np.ndarray:
    F = spec.field
    pts = hermitian_points(spec.q0)
    x, y = pts[:, 0], pts[:, 1]
    mons = hermitian_monomials(spec.q0, spec.m)
    if not mons:
        return np.zeros((0, spec.n), dtype=np.int64)
    return np.stack([F.mul(F.pow(x, i), F.pow(y, j)) for i, j in mons])


@functools.lru_cache(maxsize=256)
def _hermitian_code_cached(q0: int, m: int) -> LinearCode:
    spec = HermitianSpec(q0, m)
    return code_from_rows(spec.field, hermitian_matrix(spec), spec.n)


def hermitian_code(spec: HermitianSpec) -> LinearCode:
    """Evaluation of the monomial basis of L(m P_inf) at the affine points.

    For ``m >= n + 2g - 1`` the result is the full space.
    """
    return _hermitian_code_cached(spec.q0, spec.m)


def hermitian_dual(spec: HermitianSpec) -> HermitianSpec:
    """``C(m P_inf)^⊥ = C((n + 2g - 2 - m) P_inf)``."""
    md = spec.n + 2 * spec.genus - 2 - spec.m
    if md < 0:
        raise CodeError(f"dual degree {md} is negative (code is the full space)")
    return HermitianSpec(spec.q0, md)


def designed_distance(spec) -> int:
    """Lower bound ``n - deg E`` on the minimum distance of the evaluation code."""
    return spec.n - spec.degree


def code_of(spec) -> LinearCode:
    if isinstance(spec, GrsSpec):
        return grs_code(spec)
    if isinstance(spec, HermitianSpec):
        return hermitian_code(spec)
    raise TypeError(f"unknown code spec {type(spec).__name__}")


def square_of(spec) -> LinearCode:
    """The code the Schur square of ``code_of(spec)`` must equal."""
    if isinstance(spec, GrsSpec):
        return grs_code(grs_square_spec(spec))
    return hermitian_code(spec.with_m(2 * spec.m))
