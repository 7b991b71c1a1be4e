"""Dense linear algebra over a finite field.

Matrices are 2-D ``int64`` arrays of encoded field elements. The reduced
row-echelon form is computed by a recursive block elimination whose bulk
work is done by :meth:`GF.matmul`, so large span computations (Schur
squares with hundreds of columns) cost a handful of BLAS calls rather
than one Python-level sweep per pivot.
"""

from __future__ import annotations

import numpy as np

from .gf import GF

# below this many rows the plain pivot sweep is used
_BASE_ROWS = 16


def _rref_small(F: GF, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    M = M.copy()
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        if M[r, c] != 1:
            M[r, c:] = F.mul(M[r, c:], F.inv(M[r, c]))
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            f = M[others, c]
            M[np.ix_(others, np.arange(c, cols))] = F.sub(
                M[others, c:], F.mul(f[:, None], M[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _eliminate(F: GF, X: np.ndarray, R: np.ndarray, pivots: list[int]) -> np.ndarray:
    """Clear the pivot columns of ``X`` using the RREF rows ``R``."""
    if not pivots or X.shape[0] == 0:
        return X
    return F.sub(X, F.matmul(X[:, pivots], R))


def _rref_rec(F: GF, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows = M.shape[0]
    if rows <= _BASE_ROWS:
        return _rref_small(F, M)
    half = rows // 2
    R1, P1 = _rref_rec(F, M[:half])
    bottom = _eliminate(F, M[half:], R1, P1)
    bottom = bottom[np.any(bottom != 0, axis=1)]
    if bottom.shape[0] == 0:
        return R1, P1
    R2, P2 = _rref_rec(F, bottom)
    if not P2:
        return R1, P1
    R1 = _eliminate(F, R1, R2, P2)
    R = np.vstack([R1, R2])
    P = P1 + P2
    order = np.argsort(P, kind="stable")
    return R[order], [P[i] for i in order]


def rref(F: GF, M) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form with zero rows trimmed.

    Returns ``(R, rank, pivots)``; ``R`` has exactly ``rank`` rows.
    """
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    cols = M.shape[1]
    M = M[np.any(M != 0, axis=1)] if M.shape[0] else M
    if M.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.int64), 0, []
    R, P = _rref_rec(F, M)
    return R, len(P), P


def rank(F: GF, M) -> int:
    return rref(F, M)[1]


def kernel(F: GF, M) -> np.ndarray:
    """Basis (in RREF) of the right kernel ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, r, P = rref(F, M)
    free = [c for c in range(cols) if c not in set(P)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, c in enumerate(free):
        K[i, c] = 1
        if r:
            K[i, P] = F.neg(R[:, c])
    # the free-column construction is already reduced up to row order
    return rref(F, K)[0] if len(free) else K


def solve(F: GF, M, y) -> np.ndarray | None:
    """Some ``x`` with ``M x = y`` (free variables zero), or None."""
    M = np.asarray(M, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (M.shape[0],):
        raise ValueError("right-hand side length must equal the row count")
    aug = np.hstack([M, y[:, None]])
    R, r, P = rref(F, aug)
    cols = M.shape[1]
    if P and P[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    if r:
        x[P] = R[:, cols]
    return x


def row_space_contains(F: GF, R: np.ndarray, pivots: list[int], X) -> np.ndarray:
    """Row-wise membership of ``X`` in the span of an RREF basis ``R``."""
    X = np.atleast_2d(np.asarray(X, dtype=np.int64))
    resid = _eliminate(F, X, R, pivots)
    return ~np.any(resid != 0, axis=1)


def format_matrix(M) -> str:
    M = np.asarray(M, dtype=np.int64)
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += [" ".join(map(str, row)) for row in M.tolist()]
    return "\n".join(lines)


def parse_matrix(lines: list[str], F: GF | None = None) -> np.ndarray:
    """Inverse of :func:`format_matrix`; ``lines`` starts at the header."""
    try:
        rows, cols = (int(v) for v in lines[0].split())
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad matrix header: {lines[0] if lines else ''!r}") from exc
    if len(lines) < rows + 1:
        raise ValueError(f"matrix needs {rows} rows, found {len(lines) - 1}")
    M = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        vals = lines[i + 1].split()
        if len(vals) != cols:
            raise ValueError(f"matrix row {i + 1} has {len(vals)} entries, expected {cols}")
        M[i] = [int(v) for v in vals]
    if F is not None:
        F.asarray(M)
    return M
