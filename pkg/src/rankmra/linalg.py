"""Self-contained dense linear algebra for the validation suite.

Deliberately implemented here rather than delegated: the audits certify the
structural results, so the rank / nullspace / eigenvalue routines they rest
on are kept small, readable, and under the same roof. All routines use
partial pivoting and the documented rank tolerance 1e-8 times the infinity
norm (maximum absolute row sum) of the input.
"""

from __future__ import annotations

import numpy as np

from .errors import AuditFailure

RANK_RTOL = 1e-8


def _tolerance(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return RANK_RTOL * float(np.abs(m).sum(axis=1).max())


def _rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form by Gauss-Jordan with partial pivoting.

    Returns the reduced matrix and its pivot columns; entries below the
    rank tolerance of the original matrix are treated as zero.
    """
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2:
        raise ValueError("need a matrix")
    tol = _tolerance(a)
    n_rows, n_cols = a.shape
    pivot_cols: list[int] = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        pivot = row + int(np.argmax(np.abs(a[row:, col])))
        if np.abs(a[pivot, col]) <= tol:
            continue
        if pivot != row:
            a[[row, pivot]] = a[[pivot, row]]
        a[row] /= a[row, col]
        others = np.arange(n_rows) != row
        a[others] -= np.outer(a[others, col], a[row])
        pivot_cols.append(col)
        row += 1
    return a, pivot_cols


def matrix_rank(m: np.ndarray) -> int:
    """Rank via elimination with the documented tolerance."""
    a = np.array(np.atleast_2d(m), dtype=float, copy=True)
    tol = _tolerance(a)
    n_rows, n_cols = a.shape
    rank = 0
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        pivot = row + int(np.argmax(np.abs(a[row:, col])))
        if np.abs(a[pivot, col]) <= tol:
            continue
        if pivot != row:
            a[[row, pivot]] = a[[pivot, row]]
        below = a[row + 1 :, col] / a[row, col]
        a[row + 1 :, col:] -= np.outer(below, a[row, col:])
        rank += 1
        row += 1
    return rank


def nullspace(m: np.ndarray) -> np.ndarray:
    """Basis of the right null space, one column per free direction."""
    a = np.atleast_2d(np.asarray(m, dtype=float))
    reduced, pivot_cols = _rref(a)
    n_cols = a.shape[1]
    free_cols = [c for c in range(n_cols) if c not in set(pivot_cols)]
    basis = np.zeros((n_cols, len(free_cols)))
    for idx, free in enumerate(free_cols):
        basis[free, idx] = 1.0
        for row, pivot in enumerate(pivot_cols):
            basis[pivot, idx] = -reduced[row, free]
    return basis


def solve_exact(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve a square full-rank system; audit failure if it is singular."""
    a = np.asarray(m, dtype=float)
    b = np.asarray(rhs, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise AuditFailure(f"system of shape {a.shape} is not square")
    one_dim = b.ndim == 1
    b = b.reshape(a.shape[0], -1)
    reduced, pivot_cols = _rref(np.hstack([a, b]))
    if pivot_cols[: a.shape[1]] != list(range(a.shape[1])) or len(
        pivot_cols
    ) != a.shape[1]:
        raise AuditFailure(f"singular system of order {a.shape[0]}")
    x = reduced[:, a.shape[1] :]
    return x[:, 0] if one_dim else x


def sym_eigenvalues(
    m: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60
) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    ascending."""
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    if np.abs(a - a.T).max(initial=0.0) > 1e-10 * (np.abs(a).max(initial=0.0) + 1.0):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    if n <= 1:
        return np.diag(a).copy()
    scale = np.abs(a).max(initial=0.0)
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a))).max()
        if off <= tol * scale:
            break
        threshold = off / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < threshold:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                row_p = a[p].copy()
                row_q = a[q].copy()
                a[p] = c * row_p - s * row_q
                a[q] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[q, p] = 0.0
                a[p, q] = 0.0
    return np.sort(np.diag(a))


def min_eigenvalue(m: np.ndarray) -> float:
    """Smallest eigenvalue of a symmetric matrix."""
    return float(sym_eigenvalues(m)[0])
