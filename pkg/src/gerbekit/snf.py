"""Smith normal form over the integers, with exact arbitrary-precision entries.

Matrices are numpy arrays of dtype=object holding Python ints, so no entry
can overflow.  The decomposition returns unimodular U, V together with their
exact inverses, which is what the cohomology solvers need.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def integer_matrix(rows) -> np.ndarray:
    """Object-dtype integer matrix from nested sequences (exact Python ints)."""
    arr = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape((0, 0)) if arr.size == 0 else arr.reshape((1, -1))
    return arr


def identity_matrix(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def zeros_matrix(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


@dataclass(frozen=True)
class SmithDecomposition:
    """D = U @ M @ V with U, V unimodular and D diagonal, d1 | d2 | ...

    ``uinv`` and ``vinv`` are the exact integer inverses of U and V.
    """

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    uinv: np.ndarray
    vinv: np.ndarray

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.D.shape)
        return tuple(int(self.D[i, i]) for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _find_pivot(A, t):
    """Smallest nonzero absolute value in A[t:, t:], ties in row-major order."""
    best = None
    m, n = A.shape
    for i in range(t, m):
        for j in range(t, n):
            v = A[i, j]
            if v != 0 and (best is None or abs(v) < abs(A[best[0], best[1]])):
                best = (i, j)
    return best


def smith_normal_form(M) -> SmithDecomposition:
    """Smith normal form of an integer matrix by exact row/column reduction.

    The pivot is always the entry of smallest nonzero absolute value in the
    remaining submatrix (row-major tie-break), which keeps the reduction
    deterministic.
    """
    A = np.array(M, dtype=object).copy()
    if A.ndim != 2:
        A = A.reshape((0, 0)) if A.size == 0 else A.reshape((1, -1))
    m, n = A.shape
    U, Uinv = identity_matrix(m), identity_matrix(m)
    V, Vinv = identity_matrix(n), identity_matrix(n)

    def swap_rows(i, j):
        A[[i, j], :] = A[[j, i], :]
        U[[i, j], :] = U[[j, i], :]
        Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def swap_cols(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        V[:, [i, j]] = V[:, [j, i]]
        Vinv[[i, j], :] = Vinv[[j, i], :]

    def add_row(src, dst, factor):
        # row_dst += factor * row_src
        A[dst, :] += factor * A[src, :]
        U[dst, :] += factor * U[src, :]
        Uinv[:, src] -= factor * Uinv[:, dst]

    def add_col(src, dst, factor):
        A[:, dst] += factor * A[:, src]
        V[:, dst] += factor * V[:, src]
        Vinv[src, :] -= factor * Vinv[dst, :]

    def negate_row(i):
        A[i, :] = -A[i, :]
        U[i, :] = -U[i, :]
        Uinv[:, i] = -Uinv[:, i]

    t = 0
    while t < min(m, n):
        pivot = _find_pivot(A, t)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # Euclidean sweeps until row t and column t are clear off-pivot.
            dirty = False
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // A[t, t]
                    if q != 0:
                        add_row(t, i, -q)
                    if A[i, t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // A[t, t]
                    if q != 0:
                        add_col(t, j, -q)
                    if A[t, j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # Pivot must divide the rest of the submatrix for the chain.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i, j] % A[t, t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if A[t, t] < 0:
            negate_row(t)
        t += 1
    return SmithDecomposition(U=U, D=A, V=V, uinv=Uinv, vinv=Vinv)


def solve_smith(dec: SmithDecomposition, rhs) -> np.ndarray | None:
    """Exact integer solution x of M x = rhs given SNF data of M, else None."""
    y = dec.U @ np.array([int(v) for v in rhs], dtype=object)
    m = dec.D.shape[0]
    n = dec.D.shape[1]
    x = np.zeros(n, dtype=object)
    for i in range(m):
        d = dec.D[i, i] if i < n else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d != 0:
                return None
            x[i] = y[i] // d
    return dec.V @ x
