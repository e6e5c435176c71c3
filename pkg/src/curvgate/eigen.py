"""Cyclic Jacobi eigenvalue solver for small dense symmetric matrices."""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def sym_eigenvalues(matrix, *, tol: float = 1e-12, max_sweeps: int = 64) -> list[float]:
    """Eigenvalues of a real symmetric matrix in ascending order.

    Rotations sweep the strict upper triangle row by row until the
    off-diagonal Frobenius norm drops below ``tol`` (relative to the matrix
    norm when that exceeds one).
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return []
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > 1e-10 * scale:
        raise ValueError("matrix is not symmetric to 1e-10 relative")
    a = 0.5 * (a + a.T)
    target = tol * max(1.0, float(np.linalg.norm(a)))

    for _ in range(max_sweeps):
        if _off_norm(a) < target:
            return sorted(float(x) for x in np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-18 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    if _off_norm(a) < target:
        return sorted(float(x) for x in np.diag(a))
    raise ConvergenceError(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps "
        f"(off-diagonal norm {_off_norm(a):.3e})"
    )


def group_eigenvalues(values, *, atol: float = 1e-6) -> list[tuple[float, int]]:
    """Cluster sorted eigenvalues into (mean value, multiplicity) pairs."""
    groups: list[list[float]] = []
    for v in sorted(values):
        if groups and abs(v - groups[-1][-1]) <= atol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]
