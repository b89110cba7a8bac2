"""Dense linear algebra over a small prime field F_l with int64 numpy arrays.

Every function expects entries already reduced into [0, l) and returns reduced
arrays.  ``l`` must be small enough that ``d * l**2`` fits in int64.
"""

from __future__ import annotations

import numpy as np


def rref(a: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.array(a, dtype=np.int64) % ell
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, ell)) % ell
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % ell
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(a: np.ndarray, ell: int) -> np.ndarray:
    """Basis of ``{x : a x = 0}`` as the columns of the returned matrix."""
    cols = a.shape[1]
    red, pivots = rref(a, ell)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-red[r, f]) % ell
    return basis


def hessenberg(a: np.ndarray, ell: int) -> np.ndarray:
    """Upper Hessenberg matrix similar to ``a`` over F_l."""
    h = np.array(a, dtype=np.int64) % ell
    d = h.shape[0]
    for j in range(d - 2):
        nz = np.nonzero(h[j + 1:, j])[0]
        if nz.size == 0:
            continue
        k = j + 1 + nz[0]
        if k != j + 1:
            h[[j + 1, k]] = h[[k, j + 1]]
            h[:, [j + 1, k]] = h[:, [k, j + 1]]
        inv = pow(int(h[j + 1, j]), -1, ell)
        u = (h[j + 2:, j] * inv) % ell
        if not u.any():
            continue
        # rows r > j+1: row_r -= u_r row_{j+1}; then col_{j+1} += sum_r u_r col_r
        h[j + 2:] = (h[j + 2:] - np.outer(u, h[j + 1])) % ell
        h[:, j + 1] = (h[:, j + 1] + h[:, j + 2:] @ u) % ell
    return h


def charpoly(a: np.ndarray, ell: int) -> np.ndarray:
    """Characteristic polynomial coefficients, low degree first, monic."""
    h = hessenberg(a, ell)
    d = h.shape[0]
    # polys[k] = char poly of the leading k x k block
    polys = np.zeros((d + 1, d + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, d + 1):
        prev = polys[k - 1]
        cur = np.zeros(d + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - h[k - 1, k - 1] * prev) % ell
        # subtract h[i-1,k-1] * prod_{m=i}^{k-1} h[m, m-1] * polys[i-1] for i = 1..k-1
        coef = np.zeros(k - 1, dtype=np.int64)
        run = 1
        for i in range(k - 1, 0, -1):
            run = (run * int(h[i, i - 1])) % ell
            if run == 0:
                break
            coef[i - 1] = (int(h[i - 1, k - 1]) * run) % ell
        if coef.any():
            cur = (cur - coef @ polys[:k - 1]) % ell
        polys[k] = cur
    return polys[d]


def roots(poly: np.ndarray, ell: int) -> list[int]:
    """All roots in F_l, by evaluating at every field element."""
    xs = np.arange(ell, dtype=np.int64)
    acc = np.zeros(ell, dtype=np.int64)
    for c in poly[::-1]:
        acc = (acc * xs + int(c)) % ell
    return [int(x) for x in np.nonzero(acc == 0)[0]]
