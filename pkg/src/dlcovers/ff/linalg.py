"""Dense linear algebra over a prime field F_p (row reduction, kernels, images)."""

from __future__ import annotations

import numpy as np


def rref(mat, p: int):
    """Reduced row echelon form of ``mat`` over F_p.

    Returns ``(R, pivots)`` where ``R`` has the same shape as ``mat`` and
    ``pivots`` lists the pivot column of each nonzero row, in order.
    """
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        others = np.nonzero(a[:, c])[0]
        for o in others:
            if o != r:
                a[o] = (a[o] - a[o, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Basis (as rows) of {v : mat @ v = 0} over F_p."""
    a = np.asarray(mat, dtype=np.int64)
    cols = a.shape[1]
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-r[row, fc]) % p
    return basis


def row_basis(mat, p: int) -> np.ndarray:
    """Independent rows spanning the row space of ``mat``."""
    r, pivots = rref(mat, p)
    return r[: len(pivots)].copy()


def solve(mat, rhs, p: int):
    """One solution x of mat @ x = rhs over F_p, or None if inconsistent."""
    a = np.asarray(mat, dtype=np.int64) % p
    b = np.asarray(rhs, dtype=np.int64).reshape(-1, 1) % p
    aug = np.hstack([a, b])
    r, pivots = rref(aug, p)
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols]
    return x
