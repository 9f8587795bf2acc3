"""Dense linear algebra over F_p on numpy integer arrays (internal)."""

from __future__ import annotations

import numpy as np


def rref(A: np.ndarray, p: int):
    """Row-reduced echelon form mod p; returns (R, pivot column list)."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        for j in range(rows):
            if j != r and R[j, c]:
                R[j] = (R[j] - R[j, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of the right kernel of A mod p."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-R[r, fc]) % p
    return basis


def in_row_span(A: np.ndarray, v: np.ndarray, p: int) -> bool:
    """True iff v lies in the row span of A mod p."""
    if A.size == 0:
        return not np.any(np.asarray(v) % p)
    return rank(A, p) == rank(np.vstack([A, v]), p)


def row_space_dim_stack(A: np.ndarray, B: np.ndarray, p: int) -> int:
    if A.size == 0:
        return rank(B, p)
    if B.size == 0:
        return rank(A, p)
    return rank(np.vstack([A, B]), p)


def solve_row_combination(M: np.ndarray, v: np.ndarray, p: int):
    """Coefficients y with y @ M = v mod p, or None if v is outside the span."""
    M = np.array(M, dtype=np.int64) % p
    v = np.array(v, dtype=np.int64) % p
    rows, cols = M.shape
    if rows == 0:
        return None if np.any(v) else np.zeros(0, dtype=np.int64)
    aug = np.hstack([M.T, v.reshape(-1, 1)])
    R, pivots = rref(aug, p)
    if rows in pivots:  # pivot in the augmented column: inconsistent
        return None
    y = np.zeros(rows, dtype=np.int64)
    for r, c in enumerate(pivots):
        y[c] = R[r, rows]
    return y
