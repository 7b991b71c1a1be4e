"""Error-correcting pairs: validation, decoding, and constructions.

A t-error-correcting pair for a code C is a pair of codes (A, B) with
``A * B ⊆ C^⊥``, ``dim A > t``, ``d(B^⊥) > t`` and ``d(A) + d(C) > n``.
Given such a pair, every word within distance t of C is decoded by
locating the errors with a nonzero ``a ∈ A`` that vanishes on them, then
solving the erasure problem on the zero set of ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .codes import CodeError, LinearCode, dual, min_distance_bruteforce, schur_product
from .families import (GrsSpec, HermitianSpec, dual_multipliers, grs_code, hermitian_code,
                       hermitian_dual)


class DecodingError(RuntimeError):
    """No codeword within the pair's error capacity could be found."""


@dataclass(frozen=True)
class DistanceBounds:
    """Lower bounds on d(A), d(C) and d(B^⊥) supplied by a construction."""

    d_A: int
    d_C: int
    d_B_dual: int


@dataclass(frozen=True, eq=False)
class EcpPair:
    A: LinearCode
    B: LinearCode
    t: int
    C: LinearCode
    bounds: DistanceBounds | None = None


@dataclass
class Certificate:
    passed: bool
    dim_A: int
    dim_B: int
    t: int
    bounds: DistanceBounds | None
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _distance_or_none(C: LinearCode) -> int | None:
    if C.k == 0:
        return C.n + 1
    try:
        return min_distance_bruteforce(C, limit=1 << 20)
    except CodeError:
        return None


def ecp_validate(pair: EcpPair) -> Certificate:
    """Check every ECP condition; failures are named, not raised.

    Missing distance bounds are computed by enumeration on small codes.
    """
    A, B, C, t = pair.A, pair.B, pair.C, pair.t
    if not (A.n == B.n == C.n):
        raise CodeError("pair and code lengths differ")
    fails = []
    n = C.n
    if not schur_product(A, B).is_subcode_of(dual(C)):
        fails.append("A*B not contained in C^perp")
    if A.k < t + 1:
        fails.append(f"dim A = {A.k} < t + 1 = {t + 1}")

    bounds = pair.bounds
    if bounds is None:
        dA, dC, dBd = _distance_or_none(A), _distance_or_none(C), _distance_or_none(dual(B))
        if None not in (dA, dC, dBd):
            bounds = DistanceBounds(dA, dC, dBd)
    if bounds is None:
        fails.append("no distance bounds available")
    else:
        if bounds.d_B_dual <= t:
            fails.append(f"d(B^perp) >= {bounds.d_B_dual} does not exceed t = {t}")
        if bounds.d_A + bounds.d_C <= n:
            fails.append(f"d(A) + d(C) >= {bounds.d_A + bounds.d_C} does not exceed n = {n}")
    return Certificate(not fails, A.k, B.k, t, bounds, fails)


def _locator_matrix(pair: EcpPair, y: np.ndarray) -> np.ndarray:
    # M[j, r] = <a_r * y, b_j>
    F = pair.A.field
    return F.matmul(F.mul(pair.B.gen, y[None, :]), pair.A.gen.T)


def ecp_locate(pair: EcpPair, y) -> np.ndarray:
    """Basis (rows, in A's coordinates as words) of ``{a in A : <a*y, b> = 0 for b in B}``."""
    F = pair.A.field
    y = np.asarray(y, dtype=np.int64)
    if pair.B.k == 0:
        return pair.A.gen.copy()
    K = linalg.kernel(F, _locator_matrix(pair, y))
    return F.matmul(K, pair.A.gen) if K.shape[0] else np.zeros((0, y.size), dtype=np.int64)


class EcpDecoder:
    """Decoder for ``pair.C`` built once from the pair (parity checks cached)."""

    def __init__(self, pair: EcpPair):
        self.pair = pair
        self.H = dual(pair.C).gen

    @property
    def t(self) -> int:
        return self.pair.t

    def decode(self, y, return_locator: bool = False):
        pair, H = self.pair, self.H
        F = pair.C.field
        y = np.asarray(y, dtype=np.int64)
        if y.shape != (pair.C.n,):
            raise CodeError(f"received word must have length {pair.C.n}")
        syndrome = F.matmul(H, y) if H.shape[0] else np.zeros(0, dtype=np.int64)
        if not np.any(syndrome):
            return (y.copy(), None) if return_locator else y.copy()
        locators = ecp_locate(pair, y)
        if locators.shape[0] == 0:
            raise DecodingError("error locator space is trivial")
        for a in locators:
            J = np.flatnonzero(a == 0)
            if J.size == 0:
                continue
            HJ = H[:, J]
            R, rk, _ = linalg.rref(F, HJ)
            if rk < J.size:
                # erasure system on this zero set is ambiguous
                continue
            eJ = linalg.solve(F, HJ, syndrome)
            if eJ is None:
                continue
            if np.count_nonzero(eJ) > pair.t:
                continue
            e = np.zeros_like(y)
            e[J] = eJ
            c = F.sub(y, e)
            return (c, a) if return_locator else c
        raise DecodingError("no locator gives a consistent erasure solution of weight <= t")

    __call__ = decode


def ecp_decode(pair: EcpPair, y) -> np.ndarray:
    return EcpDecoder(pair).decode(y)


def build_ecp_grs(spec: GrsSpec, t: int) -> EcpPair:
    """``A = GRS_{t+1}(a, 1)`` and ``B = GRS_{n-k-t}(a, b^⊥)``."""
    n, k = spec.n, spec.k
    if t < 0 or t > (n - k) // 2:
        raise CodeError(f"t = {t} exceeds floor((n - k)/2) = {(n - k) // 2}")
    F = spec.field
    ones = np.ones(n, dtype=np.int64)
    A = grs_code(GrsSpec(F, spec.a, ones, t + 1))
    B = grs_code(GrsSpec(F, spec.a, dual_multipliers(F, spec.a, spec.b), n - k - t))
    bounds = DistanceBounds(d_A=n - t, d_C=n - k + 1, d_B_dual=n - k - t + 1)
    return EcpPair(A, B, t, grs_code(spec), bounds)


def hermitian_ecp_capacity(spec: HermitianSpec) -> int:
    return (spec.n - spec.m - 1 - spec.genus) // 2


def build_ecp_hermitian(spec: HermitianSpec, t: int) -> EcpPair:
    """``A = C((t+g) P_inf)`` and ``B = C((m^⊥ - t - g) P_inf)``."""
    g, n, m = spec.genus, spec.n, spec.m
    cap = hermitian_ecp_capacity(spec)
    if t < 0 or t > cap:
        raise CodeError(f"t = {t} exceeds the pair capacity {cap}")
    md = hermitian_dual(spec).m
    if md - t - g < 0:
        raise CodeError("divisor degree of B would be negative")
    A = hermitian_code(HermitianSpec(spec.q0, t + g))
    B = hermitian_code(HermitianSpec(spec.q0, md - t - g))
    bounds = DistanceBounds(d_A=n - t - g, d_C=n - m, d_B_dual=n - m - t - g)
    return EcpPair(A, B, t, hermitian_code(spec), bounds)


def build_ecp(spec, t: int) -> EcpPair:
    if isinstance(spec, GrsSpec):
        return build_ecp_grs(spec, t)
    return build_ecp_hermitian(spec, t)
