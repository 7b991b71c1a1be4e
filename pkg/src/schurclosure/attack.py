"""Structural attacks on subcode-based McEliece keys.

* :func:`distinguish` -- square-code dimension test.
* :func:`attack_recover_code` -- the 2-closure of the public code, which
  equals the secret enclosing AG code when the public square matches the
  enclosing square.
* :func:`attack_with_shortening` -- the same on shortened public codes,
  for divisor degrees too large for the plain closure.
* :func:`grs_full_attack` -- genus-zero key recovery: square, Sidelnikov-
  Shestakov on the square, multiplier recovery, then an ECP decoder.
* :func:`hermitian_full_attack` -- blind closure recovery, checked against
  a supplied spec which is then used to build the ECP.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .codes import (LinearCode, code_from_rows, dual, extend_by_zeros, full_space,
                    schur_product, shorten, square, sum_codes)
from .cryptosystem import PublicKey, message_from_codeword
from .ecp import DecodingError, EcpDecoder, build_ecp_grs, build_ecp_hermitian
from .families import GrsSpec, HermitianSpec, dual_multipliers, grs_code, hermitian_code, vandermonde
from .gf import GF


class AttackFailure(RuntimeError):
    """A named stage of an attack pipeline failed."""

    def __init__(self, stage: str, msg: str = ""):
        super().__init__(f"{stage}: {msg}" if msg else stage)
        self.stage = stage


@dataclass(frozen=True)
class DistinguisherReport:
    l: int
    sq_dim: int
    random_expectation: int

    @property
    def verdict(self) -> str:
        return "algebraic-like" if self.sq_dim < self.random_expectation else "random-like"


def distinguish(C: LinearCode) -> DistinguisherReport:
    S = square(C)
    return DistinguisherReport(C.k, S.k, min(C.n, C.k * (C.k + 1) // 2))


@dataclass(frozen=True)
class Recovery:
    code: LinearCode
    degenerate: bool
    sq_dim: int


def attack_recover_code(C_pub: LinearCode) -> Recovery:
    """2-closure of the public code; a full-space square is flagged degenerate."""
    S = square(C_pub)
    if S.is_full:
        return Recovery(full_space(C_pub.field, C_pub.n), True, S.k)
    return Recovery(dual(schur_product(C_pub, dual(S))), False, S.k)


@dataclass(frozen=True)
class ShorteningRecovery:
    code: LinearCode
    degenerate: bool
    dims: tuple[int, ...]
    sets: tuple[tuple[int, ...], ...]


def attack_with_shortening(C_pub: LinearCode, s: int, trials: int, seed: int,
                           check=None) -> ShorteningRecovery:
    """Sum of the re-embedded closures of ``trials`` random shortenings.

    ``check(shortened, recovered)`` optionally filters each shortened
    recovery; rejected or degenerate trials contribute nothing. Stops early
    once two consecutive partial sums coincide.
    """
    n = C_pub.n
    if not 0 <= s < n:
        raise ValueError("shortening size must satisfy 0 <= s < n")
    if s == 0:
        rec = attack_recover_code(C_pub)
        return ShorteningRecovery(rec.code, rec.degenerate, (rec.code.k,), ((),))
    total = code_from_rows(C_pub.field, np.zeros((0, n), dtype=np.int64), n)
    dims, sets = [], []
    useful = 0
    previous = None
    for i in range(trials):
        rng = np.random.default_rng(seed ^ i)
        I = tuple(sorted(int(v) for v in rng.choice(n, size=s, replace=False)))
        short = shorten(C_pub, I)
        if short.k == 0:
            continue
        rec = attack_recover_code(short)
        if rec.degenerate or (check is not None and not check(short, rec.code)):
            continue
        useful += 1
        total = sum_codes(total, extend_by_zeros(rec.code, I, n))
        dims.append(total.k)
        sets.append(I)
        if previous is not None and previous == total.k:
            break
        previous = total.k
    if useful == 0:
        return ShorteningRecovery(full_space(C_pub.field, n), True, (), ())
    return ShorteningRecovery(total, False, tuple(dims), tuple(sets))


def square_preserved(C: LinearCode, R: LinearCode) -> bool:
    """Blind sanity test: a correct recovery has the same square as the input."""
    return R.k > C.k and square(R) == square(C)


def attack_blind_shortening(C_pub: LinearCode, seed: int, trials: int = 8,
                            max_s: int | None = None) -> ShorteningRecovery:
    """Sweep the shortening size upward until the recovery is non-degenerate."""
    max_s = C_pub.k - 1 if max_s is None else max_s
    for s in range(0, max_s + 1):
        rec = attack_with_shortening(C_pub, s, trials, seed, check=square_preserved)
        if not rec.degenerate and not rec.code.is_full and C_pub.is_subcode_of(rec.code):
            return rec
    return ShorteningRecovery(full_space(C_pub.field, C_pub.n), True, (), ())


def shortening_size(n: int, degree: int) -> int:
    """Smallest s with ``degree - s <= (n - s - 2)/2``."""
    s = 0
    while 2 * (degree - s) > n - s - 2:
        s += 1
    return s


# ------------------------------------------------------------- genus zero


def _normalise_points(F: GF, a: np.ndarray) -> np.ndarray:
    """Affine map sending a[0] -> 0 and a[1] -> 1."""
    shift = F.sub(a, a[0])
    return F.div(shift, shift[1])


def _ss_direct(C: LinearCode, k: int) -> tuple[np.ndarray, np.ndarray] | None:
    F, n = C.field, C.n
    if tuple(C.pivots) != tuple(range(k)):
        return None
    R = C.gen[:, k:]
    if np.any(R == 0):
        return None
    rho = F.div(R[0], R[1])  # = kappa (a_j - 1)/a_j
    others = np.arange(2, k)
    sigma = F.div(R[0][None, :], R[others]) if others.size else np.zeros((0, n - k), np.int64)
    for kappa in range(1, F.q):
        if np.any(rho == kappa):
            continue
        aj = F.div(kappa, F.sub(kappa, rho))
        if np.any((aj == 0) | (aj == 1)) or len(np.unique(aj)) != aj.size:
            continue
        a = np.zeros(n, dtype=np.int64)
        a[1] = 1
        a[k:] = aj
        if others.size:
            # sigma_ij a_j = mu_i a_j - nu_i ; two columns fix (mu_i, nu_i)
            if n - k < 2:
                return None
            s1, s2 = sigma[:, 0], sigma[:, 1]
            a1, a2 = aj[0], aj[1]
            mu = F.div(F.sub(F.mul(s1, a1), F.mul(s2, a2)), F.sub(a1, a2))
            if np.any(mu == 0):
                continue
            nu = F.sub(F.mul(mu, a1), F.mul(s1, a1))
            lhs = F.mul(sigma, aj[None, :])
            rhs = F.sub(F.mul(mu[:, None], aj[None, :]), nu[:, None])
            if not np.array_equal(lhs, rhs):
                continue
            a[others] = F.div(nu, mu)
        if len(np.unique(a)) != n:
            continue
        b = recover_multipliers(C, a, k)
        if b is not None and grs_code(GrsSpec(F, a, b, k)) == C:
            return a, b
    return None


def ss_recover(C: LinearCode, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Points and multipliers ``(a, b)`` with ``GRS_k(a, b) == C``.

    Points are normalised so that ``a[0] = 0`` and ``a[1] = 1``. High-rate
    inputs are handled through the dual, which is GRS on the same points.
    """
    F, n = C.field, C.n
    if C.k != k:
        raise AttackFailure("sidelnikov-shestakov", f"code dimension {C.k} != {k}")
    if n > F.q:
        raise AttackFailure("sidelnikov-shestakov", "length exceeds the field size")
    if k == 0 or k == n:
        a = _normalise_points(F, np.arange(n, dtype=np.int64)) if n >= 2 else np.zeros(n, np.int64)
        if k == 0:
            raise AttackFailure("sidelnikov-shestakov", "zero code")
        return a, np.ones(n, dtype=np.int64)
    if k == 1:
        a = _normalise_points(F, np.arange(n, dtype=np.int64)) if n >= 2 else np.zeros(1, np.int64)
        b = C.gen[0]
        if np.any(b == 0):
            raise AttackFailure("sidelnikov-shestakov", "generator has a zero coordinate")
        return a, b.copy()
    if 2 * k > n:
        a, bd = ss_recover(dual(C), n - k)
        b = dual_multipliers(F, a, bd)
        if grs_code(GrsSpec(F, a, b, k)) != C:
            raise AttackFailure("sidelnikov-shestakov", "dual reconstruction mismatch")
        return a, b
    found = _ss_direct(C, k)
    if found is None:
        raise AttackFailure("sidelnikov-shestakov", "code is not a GRS code of this dimension")
    return found


def recover_multipliers(C_pub: LinearCode, a, k: int) -> np.ndarray | None:
    """Multipliers ``b`` with ``C_pub ⊆ GRS_k(a, b)``, from the dual multipliers.

    The dual multipliers ``g`` satisfy ``sum_i c_i g_i a_i^j = 0`` for every
    public codeword ``c`` and ``j < n - k``; a unique (projective) solution
    with all ``g_i != 0`` gives ``b_i = 1 / (g_i prod_{j != i} (a_i - a_j))``.
    """
    F, n = C_pub.field, C_pub.n
    a = np.asarray(a, dtype=np.int64)
    if C_pub.k == 0 or not 0 < k < n:
        return None
    V = vandermonde(F, a, n - k)
    system = F.mul(C_pub.gen[:, None, :], V[None, :, :]).reshape(-1, n)
    K = linalg.kernel(F, system)
    if K.shape[0] != 1 or np.any(K[0] == 0):
        return None
    b = dual_multipliers(F, a, K[0])
    try:
        spec = GrsSpec(F, a, b, k)
    except ValueError:
        return None
    if not C_pub.is_subcode_of(grs_code(spec)):
        return None
    return b


@dataclass(frozen=True, eq=False)
class RecoveredGrs:
    spec: GrsSpec
    certified: bool

    @property
    def a(self) -> np.ndarray:
        return self.spec.a

    @property
    def b(self) -> np.ndarray:
        return self.spec.b

    @property
    def k(self) -> int:
        return self.spec.k


class AttackDecoder:
    """Message recovery from ciphertexts using a recovered ECP."""

    def __init__(self, pk: PublicKey, pair):
        self.pk = pk
        self.decoder = EcpDecoder(pair)

    def __call__(self, y) -> np.ndarray:
        c = self.decoder.decode(y)
        return message_from_codeword(self.pk.field, self.pk.G, c)


def grs_full_attack(pk: PublicKey) -> tuple[RecoveredGrs, AttackDecoder]:
    C_pub = pk.code()
    F, n = pk.field, pk.n
    S = square(C_pub)
    if S.k % 2 == 0 or S.is_full:
        raise AttackFailure("k-inference", f"square dimension {S.k} is not 2k - 1 < n")
    k = (S.k + 1) // 2
    try:
        a, _ = ss_recover(S, 2 * k - 1)
    except AttackFailure as exc:
        raise AttackFailure("sidelnikov-shestakov", str(exc)) from exc
    b = recover_multipliers(C_pub, a, k)
    if b is None:
        raise AttackFailure("multipliers", "no unique multiplier vector")
    spec = GrsSpec(F, a, b, k)
    certified = C_pub.is_subcode_of(grs_code(spec))
    if pk.t > (n - k) // 2:
        raise AttackFailure("ecp", f"t = {pk.t} exceeds the GRS capacity")
    pair = build_ecp_grs(spec, pk.t)
    return RecoveredGrs(spec, certified), AttackDecoder(pk, pair)


def hermitian_full_attack(pk: PublicKey, oracle_spec: HermitianSpec,
                          seed: int = 0) -> tuple[Recovery, AttackDecoder]:
    """Blind closure recovery, then an ECP instantiated from ``oracle_spec``.

    The divisor degree of ``oracle_spec`` is consumed only after the blind
    recovery has been checked equal to ``hermitian_code(oracle_spec)``.
    """
    C_pub = pk.code()
    target = hermitian_code(oracle_spec)
    rec = attack_recover_code(C_pub)
    if rec.code != target and 2 * oracle_spec.m > oracle_spec.n - 2:
        sh = attack_with_shortening(C_pub, shortening_size(pk.n, oracle_spec.m), 8, seed,
                                    check=square_preserved)
        rec = Recovery(sh.code, sh.degenerate, rec.sq_dim)
    if rec.degenerate:
        raise AttackFailure("closure-degenerate", "public square is the full space")
    if rec.code != target:
        raise AttackFailure("closure", "closure attack failed: recovered code differs")
    pair = build_ecp_hermitian(oracle_spec, pk.t)
    return rec, AttackDecoder(pk, pair)


__all__ = [
    "AttackFailure", "AttackDecoder", "DecodingError", "DistinguisherReport", "Recovery",
    "RecoveredGrs", "ShorteningRecovery", "attack_blind_shortening", "attack_recover_code",
    "attack_with_shortening", "distinguish", "grs_full_attack", "hermitian_full_attack",
    "square_preserved", "recover_multipliers", "shortening_size", "ss_recover",
]
