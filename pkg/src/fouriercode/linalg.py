"""Linear algebra over GF(p^s) on numpy arrays of element codes.

Matrices are 2-d int64 arrays whose entries are field codes.  All
routines are pure; Gaussian elimination works row-vectorized through
the field's table lookups, and ``batch_rank`` eliminates a whole stack
of small matrices at once (the workhorse of the support-scan distance
oracle).
"""

from __future__ import annotations

import numpy as np

from .field import GF

_CHUNK_ENTRIES = 2_000_000


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(F: GF, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Matrix product over the field; X is (m,k), Y is (k,n)."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.ndim == 1:
        return mat_mul(F, X[None, :], Y)[0]
    if Y.ndim == 1:
        return mat_mul(F, X, Y[:, None])[:, 0]
    m, k = X.shape
    k2, n = Y.shape
    assert k == k2, (X.shape, Y.shape)
    if k == 0:
        return zeros((m, n))
    if F.s == 1:
        # products stay below p^2 * k < 2^63 for supported field sizes
        return (X @ Y) % F.p
    out = zeros((m, n))
    step = max(1, _CHUNK_ENTRIES // max(1, k * n))
    for lo in range(0, m, step):
        hi = min(m, lo + step)
        prods = F.mul(X[lo:hi, :, None], Y[None, :, :])
        if F.p == 2:
            out[lo:hi] = np.bitwise_xor.reduce(prods, axis=1)
        else:
            digs = F._digits[prods].sum(axis=1) % F.p
            out[lo:hi] = digs @ F._powers
    return out


def rref(F: GF, M: np.ndarray):
    """Reduced row echelon form; returns (R, rank, pivot_columns)."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref needs a matrix")
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for col in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, col])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.mul(R[r], F.inv(int(R[r, col])))
        others = np.nonzero(R[:, col])[0]
        others = others[others != r]
        if others.size:
            R[others] = F.sub(R[others], F.mul(R[others, col][:, None], R[r][None, :]))
        pivots.append(col)
        r += 1
    return R, r, pivots


def rank(F: GF, M: np.ndarray) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return rref(F, M)[1]


def row_space_contains(F: GF, M: np.ndarray, V: np.ndarray) -> bool:
    """True iff every row of V lies in the row space of M."""
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    if V.size == 0:
        return True
    base = rank(F, M)
    return rank(F, np.vstack([M, V])) == base


def nullspace_right(F: GF, M: np.ndarray) -> np.ndarray:
    """Basis (columns) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    m, n = M.shape
    R, r, pivots = rref(F, M)
    free = [c for c in range(n) if c not in pivots]
    basis = zeros((n, len(free)))
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = F.neg(int(R[i, fc]))
    return basis


def solve_right(F: GF, A: np.ndarray, B: np.ndarray):
    """One solution X of A X = B, or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    m, n = A.shape
    aug = np.hstack([A, B])
    R, r, pivots = rref(F, aug)
    pivots_a = [c for c in pivots if c < n]
    if len(pivots_a) < r:
        return None  # a pivot fell in the augmented block
    X = zeros((n, B.shape[1]))
    for i, pc in enumerate(pivots_a):
        X[pc] = R[i, n:]
    return X[:, 0] if vec else X


def solve_left(F: GF, G: np.ndarray, D: np.ndarray):
    """One solution K of K G = D, or None if inconsistent."""
    Kt = solve_right(F, np.asarray(G).T, np.asarray(D).T)
    return None if Kt is None else Kt.T


def inverse(F: GF, M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n, n2 = M.shape
    if n != n2:
        raise ValueError("inverse needs a square matrix")
    X = solve_right(F, M, eye(n))
    if X is None or rank(F, M) != n:
        raise ValueError("matrix is singular")
    return X


def batch_rank(F: GF, mats: np.ndarray) -> np.ndarray:
    """Rank of every matrix in a (B, m, c) stack, eliminated in lockstep."""
    mats = np.array(mats, dtype=np.int64, copy=True)
    B, m, c = mats.shape
    piv = np.zeros(B, dtype=np.int64)
    rows = np.arange(m)[None, :]
    for col in range(c):
        colvals = mats[:, :, col]
        candidates = (colvals != 0) & (rows >= piv[:, None])
        has = candidates.any(axis=1)
        idx = np.nonzero(has)[0]
        if idx.size == 0:
            continue
        prow = np.argmax(candidates[idx], axis=1)
        pr = piv[idx]
        swap = prow != pr
        if np.any(swap):
            sidx = idx[swap]
            a, b = piv[sidx], prow[swap]
            tmp = mats[sidx, a, :].copy()
            mats[sidx, a, :] = mats[sidx, b, :]
            mats[sidx, b, :] = tmp
        pv = mats[idx, pr, col]
        pivrow = F.mul(mats[idx, pr, :], F.inv(pv)[:, None])
        mats[idx, pr, :] = pivrow
        colv = mats[idx, :, col]
        contrib = F.mul(colv[:, :, None], pivrow[:, None, :])
        reduced = F.sub(mats[idx], contrib)
        reduced[np.arange(idx.size), pr, :] = pivrow
        mats[idx] = reduced
        piv[idx] += 1
        if np.all(piv >= m):
            break
    return piv
