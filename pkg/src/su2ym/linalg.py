"""Dense real-matrix kernel for indefinite-metric work at desk scale.

Matrices are plain ``numpy.ndarray`` objects (row-major, float64). Everything
here is sized for the n x 3 and small n x n matrices the rest of the package
manipulates; there is no ambition of BLAS-level performance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10

__all__ = [
    "DEFAULT_TOL",
    "LinalgError",
    "Signature",
    "SymEigen",
    "metric",
    "metric_diagonal",
    "sym_eigen",
    "is_pseudo_orthogonal",
]


class LinalgError(Exception):
    """Raised on invalid input or eigensolver non-convergence."""


@dataclass(frozen=True)
class Signature:
    """Metric signature (p, q): p leading +1 entries, q trailing -1 entries."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise LinalgError(f"signature requires p >= 1 and q >= 1, got ({self.p}, {self.q})")

    @property
    def n(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class SymEigen:
    """Eigenpairs of a symmetric matrix, eigenvalues in descending order."""

    values: np.ndarray
    vectors: np.ndarray  # orthonormal columns, vectors[:, i] pairs with values[i]


def metric_diagonal(sig: Signature) -> np.ndarray:
    """Diagonal of the metric as a length-n vector (+1 x p, -1 x q)."""
    return np.concatenate([np.ones(sig.p), -np.ones(sig.q)])


def metric(sig: Signature) -> np.ndarray:
    """The n x n metric matrix diag(+1,...,+1, -1,...,-1)."""
    return np.diag(metric_diagonal(sig))


def sym_eigen(S: np.ndarray, tol: float = DEFAULT_TOL) -> SymEigen:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Rotations sweep the strict upper triangle until the off-diagonal Frobenius
    norm drops below 1e-13 * ||S||_F, with a hard cap of 50 sweeps. The result
    is sorted by descending eigenvalue.

    Raises LinalgError if S is not square, not symmetric within ``tol`` (scaled
    by ||S||_max), or the sweep cap is exhausted.
    """
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise LinalgError(f"expected a square matrix, got shape {S.shape}")
    scale = max(1.0, float(np.max(np.abs(S))) if S.size else 0.0)
    if float(np.max(np.abs(S - S.T))) > tol * scale:
        raise LinalgError("matrix is not symmetric within tolerance")

    n = S.shape[0]
    A = S.copy()
    V = np.eye(n)
    if n == 1:
        return SymEigen(values=np.array([A[0, 0]]), vectors=V)

    norm_S = float(np.linalg.norm(S))
    threshold = 1e-13 * max(norm_S, np.finfo(float).tiny)
    converged = False
    for _ in range(50):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= threshold:
            converged = True
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                aij = A[i, j]
                if abs(aij) <= threshold / (n * n):
                    continue
                theta = (A[j, j] - A[i, i]) / (2.0 * aij)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # rotate rows/columns i and j of A, accumulate in V
                rows_i = A[i, :].copy()
                rows_j = A[j, :].copy()
                A[i, :] = c * rows_i - s * rows_j
                A[j, :] = s * rows_i + c * rows_j
                cols_i = A[:, i].copy()
                cols_j = A[:, j].copy()
                A[:, i] = c * cols_i - s * cols_j
                A[:, j] = s * cols_i + c * cols_j
                vi = V[:, i].copy()
                vj = V[:, j].copy()
                V[:, i] = c * vi - s * vj
                V[:, j] = s * vi + c * vj
    else:
        converged = float(np.linalg.norm(A - np.diag(np.diag(A)))) <= threshold
    if not converged:
        raise LinalgError("Jacobi eigensolver did not converge within 50 sweeps")

    values = np.diag(A).copy()
    order = np.argsort(-values, kind="stable")
    return SymEigen(values=values[order], vectors=V[:, order])


def is_pseudo_orthogonal(Q: np.ndarray, sig: Signature, tol: float = DEFAULT_TOL) -> bool:
    """True iff ||Q^T eta Q - eta||_max <= tol."""
    Q = np.asarray(Q, dtype=float)
    n = sig.n
    if Q.shape != (n, n):
        raise LinalgError(f"expected a {n} x {n} matrix, got shape {Q.shape}")
    eta = metric_diagonal(sig)
    defect = Q.T @ (eta[:, None] * Q) - np.diag(eta)
    return float(np.max(np.abs(defect))) <= tol
