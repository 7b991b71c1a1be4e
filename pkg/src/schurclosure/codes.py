"""Linear codes and the Schur-product code algebra.

A :class:`LinearCode` always stores its generator in reduced row-echelon
form, so two codes are equal exactly when their generators are.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from . import linalg
from .gf import GF


class CodeError(ValueError):
    """Incompatible codes or out-of-range code parameters."""


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: GF
    gen: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=(), repr=False)

    def __post_init__(self):
        self.gen.flags.writeable = False

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.gen, other.gen)

    def __hash__(self) -> int:
        return hash((self.field, self.gen.shape, self.gen.tobytes()))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field!r})"

    def contains(self, X) -> bool:
        """True when every row of ``X`` is a codeword."""
        X = np.atleast_2d(np.asarray(X, dtype=np.int64))
        if X.shape[1] != self.n:
            raise CodeError(f"vector length {X.shape[1]} != code length {self.n}")
        return bool(np.all(linalg.row_space_contains(self.field, self.gen, list(self.pivots), X)))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def is_subcode_of(self, other: LinearCode) -> bool:
        _check_compatible(self, other)
        return other.contains(self.gen) if self.k else True

    def encode(self, msg) -> np.ndarray:
        return self.field.matmul(np.asarray(msg, dtype=np.int64), self.gen)

    @property
    def is_full(self) -> bool:
        return self.k == self.n


def _check_compatible(A: LinearCode, B: LinearCode) -> None:
    A.field.check_same(B.field)
    if A.n != B.n:
        raise CodeError(f"length mismatch: {A.n} vs {B.n}")


def code_from_rows(F: GF, rows, n: int | None = None) -> LinearCode:
    """The span of ``rows``, canonicalised. ``n`` is needed for an empty row set."""
    M = np.asarray(rows, dtype=np.int64)
    if M.size == 0:
        if n is None:
            n = M.shape[1] if M.ndim == 2 else 0
        M = np.zeros((0, n), dtype=np.int64)
    if M.ndim != 2:
        raise CodeError("rows must form a 2-D array")
    R, _, P = linalg.rref(F, M)
    return LinearCode(F, R, tuple(P))


def zero_code(F: GF, n: int) -> LinearCode:
    return LinearCode(F, np.zeros((0, n), dtype=np.int64), ())


def full_space(F: GF, n: int) -> LinearCode:
    return LinearCode(F, np.eye(n, dtype=np.int64), tuple(range(n)))


def dual(C: LinearCode) -> LinearCode:
    if C.k == 0:
        return full_space(C.field, C.n)
    K = linalg.kernel(C.field, C.gen)
    return code_from_rows(C.field, K, C.n)


def parity_check(C: LinearCode) -> np.ndarray:
    return dual(C).gen


def schur_rows(F: GF, A: np.ndarray, B: np.ndarray, symmetric: bool = False) -> np.ndarray:
    """All componentwise products of rows of ``A`` with rows of ``B``."""
    if symmetric:
        i, j = np.triu_indices(A.shape[0])
        return F.mul(A[i], A[j])
    return F.mul(A[:, None, :], B[None, :, :]).reshape(-1, A.shape[1])


def schur_product(A: LinearCode, B: LinearCode) -> LinearCode:
    _check_compatible(A, B)
    if A.k == 0 or B.k == 0:
        return zero_code(A.field, A.n)
    rows = schur_rows(A.field, A.gen, B.gen, symmetric=A == B)
    return code_from_rows(A.field, rows, A.n)


def schur_power(C: LinearCode, t: int) -> LinearCode:
    """``C^(t)``; C^(1) = C and C^(t) = C * C^(t-1)."""
    if t < 1:
        raise CodeError("Schur power needs t >= 1")
    P = C
    for _ in range(t - 1):
        P = schur_product(C, P)
    return P


def square(C: LinearCode) -> LinearCode:
    return schur_power(C, 2)


def closure(C: LinearCode, t: int = 2, method: str = "dual") -> LinearCode:
    """The t-closure ``{a : a * C^(t-1) ⊆ C^(t)}``.

    ``method="dual"`` uses ``(C^(t-1) * (C^(t))^⊥)^⊥``; ``"membership"``
    solves the defining condition directly by asking that each ``a * u``
    (``u`` a basis word of C^(t-1)) leave no residue after reduction by
    the RREF basis of C^(t). ``"both"`` runs the two and insists they agree.
    """
    if t < 2:
        raise CodeError("closure needs t >= 2")
    if method == "both":
        a = closure(C, t, "dual")
        b = closure(C, t, "membership")
        if a != b:  # pragma: no cover
            raise AssertionError("closure computations disagree")
        return a
    F, n = C.field, C.n
    if C.k == 0:
        return full_space(F, n)
    lower = schur_power(C, t - 1)
    upper = schur_product(C, lower)
    if method == "dual":
        return dual(schur_product(lower, dual(upper)))
    if method != "membership":
        raise CodeError(f"unknown closure method {method!r}")
    # residue of v modulo upper: v - v[pivots] @ R, a linear map v -> v @ Res
    R, P = upper.gen, list(upper.pivots)
    Res = np.eye(n, dtype=np.int64)
    if P:
        Res = F.sub(Res, F.matmul(Res[:, P], R))
    free = [c for c in range(n) if c not in set(P)]
    if not free:
        return full_space(F, n)
    Res = Res[:, free]
    # a*u @ Res = a @ (diag(u) Res): stack the constraint blocks
    blocks = [F.mul(u[:, None], Res) for u in lower.gen]
    system = np.hstack(blocks).T
    return code_from_rows(F, linalg.kernel(F, system), n)


def shorten(C: LinearCode, positions: Iterable[int]) -> LinearCode:
    """Codewords vanishing on ``positions``, with those positions deleted."""
    I = sorted(set(int(i) for i in positions))
    if any(i < 0 or i >= C.n for i in I):
        raise CodeError("shortening positions out of range")
    keep = [j for j in range(C.n) if j not in set(I)]
    F = C.field
    if not I:
        return C
    if C.k == 0:
        return zero_code(F, len(keep))
    combos = linalg.kernel(F, C.gen[:, I].T)
    if combos.shape[0] == 0:
        return zero_code(F, len(keep))
    words = F.matmul(combos, C.gen)
    return code_from_rows(F, words[:, keep], len(keep))


def puncture(C: LinearCode, positions: Iterable[int]) -> LinearCode:
    I = set(int(i) for i in positions)
    keep = [j for j in range(C.n) if j not in I]
    return code_from_rows(C.field, C.gen[:, keep], len(keep))


def extend_by_zeros(C: LinearCode, positions: Iterable[int], n_total: int) -> LinearCode:
    I = sorted(set(int(i) for i in positions))
    if C.n != n_total - len(I):
        raise CodeError(f"code length {C.n} != {n_total} - {len(I)}")
    keep = [j for j in range(n_total) if j not in set(I)]
    G = np.zeros((C.k, n_total), dtype=np.int64)
    G[:, keep] = C.gen
    return code_from_rows(C.field, G, n_total)


def sum_codes(A: LinearCode, B: LinearCode) -> LinearCode:
    _check_compatible(A, B)
    return code_from_rows(A.field, np.vstack([A.gen, B.gen]), A.n)


def intersect_codes(A: LinearCode, B: LinearCode) -> LinearCode:
    _check_compatible(A, B)
    return dual(sum_codes(dual(A), dual(B)))


def random_full_rank(F: GF, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform ``rows x cols`` matrix, redrawn until it has rank ``rows``."""
    while True:
        S = F.random(rng, (rows, cols))
        if linalg.rank(F, S) == rows:
            return S


def random_subcode(C: LinearCode, l: int, seed: int) -> LinearCode:
    if not 0 < l <= C.k:
        raise CodeError(f"subcode dimension {l} outside 1..{C.k}")
    rng = np.random.default_rng(seed)
    S = random_full_rank(C.field, l, C.k, rng)
    return code_from_rows(C.field, C.field.matmul(S, C.gen), C.n)


def random_code(F: GF, n: int, k: int, seed: int) -> LinearCode:
    rng = np.random.default_rng(seed)
    return code_from_rows(F, random_full_rank(F, k, n, rng), n)


def weights(X) -> np.ndarray:
    return np.count_nonzero(np.asarray(X), axis=-1)


def all_codewords(C: LinearCode, limit: int = 1 << 24) -> np.ndarray:
    """Every codeword, in lexicographic message order."""
    F = C.field
    count = F.q ** C.k
    if count > limit:
        raise CodeError(f"{count} codewords exceed the enumeration guard {limit}")
    idx = np.arange(count, dtype=np.int64)
    msgs = (idx[:, None] // (F.q ** np.arange(C.k, dtype=np.int64))) % F.q
    return F.matmul(msgs, C.gen) if C.k else np.zeros((1, C.n), dtype=np.int64)


def min_distance_bruteforce(C: LinearCode, limit: int = 1 << 24) -> int:
    """Exact minimum distance by enumerating all codewords (guarded)."""
    if C.k == 0:
        raise CodeError("the zero code has no minimum distance")
    F = C.field
    if F.q ** C.k > limit:
        raise CodeError(f"q^k = {F.q}^{C.k} exceeds the enumeration guard")
    best = C.n
    chunk = 1 << 16
    powers = F.q ** np.arange(C.k, dtype=np.int64)
    for start in range(1, F.q ** C.k, chunk):
        idx = np.arange(start, min(start + chunk, F.q ** C.k), dtype=np.int64)
        msgs = (idx[:, None] // powers) % F.q
        best = min(best, int(weights(F.matmul(msgs, C.gen)).min()))
    return best


def format_code(C: LinearCode) -> str:
    return "\n".join([C.field.serialize(), f"CODE {C.n} {C.k}", linalg.format_matrix(C.gen)])


def parse_code(text: str) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise CodeError("code file too short")
    F = GF.parse(lines[0])
    head = lines[1].split()
    if len(head) != 3 or head[0] != "CODE":
        raise CodeError(f"line 2: expected 'CODE <n> <k>', got {lines[1]!r}")
    n, k = int(head[1]), int(head[2])
    M = linalg.parse_matrix(lines[2:], F)
    if M.shape != (k, n):
        raise CodeError(f"line 3: matrix shape {M.shape} does not match CODE {n} {k}")
    return code_from_rows(F, M, n)


def subfield_subcode(C: LinearCode, order: int) -> LinearCode:
    """``C ∩ GF(order)^n``, returned with scalars extended back to C's field.

    The extension has the same dimension over the big field as the subfield
    subcode has over GF(order).
    """
    from .gf import field

    F = C.field
    sub = F.subfield_elements(order)
    Fp = field(F.p)
    # GF(p)-basis of the subfield, chosen greedily in encoding order
    basis: list[int] = []
    for x in sub[1:]:
        cand = basis + [int(x)]
        if linalg.rank(Fp, F.digits(np.array(cand))) == len(cand):
            basis = cand
        if F.p ** len(basis) == order:
            break
    H = dual(C).gen
    n = C.n
    if H.shape[0] == 0:
        words = np.eye(n, dtype=np.int64)
        return code_from_rows(F, words, n)
    r = len(basis)
    # column (i, s) of the GF(p) system: digits of H[:, i] * beta_s
    cols = F.mul(H[:, :, None], np.array(basis)[None, None, :])  # h x n x r
    system = F.digits(cols)  # h x n x r x m
    system = np.transpose(system, (0, 3, 1, 2)).reshape(H.shape[0] * F.m, n * r)
    U = linalg.kernel(Fp, system)
    if U.shape[0] == 0:
        return zero_code(F, n)
    U = U.reshape(-1, n, r)
    X = np.zeros((U.shape[0], n), dtype=np.int64)
    for s, beta in enumerate(basis):
        X = F.add(X, F.mul(U[:, :, s], beta))
    return code_from_rows(F, X, n)
