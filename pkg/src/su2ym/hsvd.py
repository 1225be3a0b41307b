"""Hyperbolic singular value decomposition of real n x N matrices.

For a metric of signature (p, q) the factorization is L^T A R = Sigma with
L pseudo-orthogonal, R orthogonal and Sigma in block-canonical form: a
positive diagonal block X (timelike directions), a positive diagonal block Y
(spacelike directions) and an identity block duplicated once in each row
block (isotropic directions). The parameters are

  x = number of positive eigenvalues of A^T eta A,
  y = number of negative eigenvalues of A^T eta A,
  d = rank(A) - rank(A^T eta A).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import Signature, metric_diagonal, sym_eigen

TOL_RANK = 1e-9
NEAR_RANK = 1e-6

__all__ = [
    "HsvdError",
    "CanonicalForm",
    "HsvdDecomposition",
    "hsvd",
    "canonical_params",
    "canonicalize_current",
]


class HsvdError(Exception):
    """Raised when the pseudo-orthogonal factor cannot be completed."""


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical matrix Sigma with its block parameters and diagonal values."""

    sigma: np.ndarray
    x: int
    y: int
    d: int
    values_x: np.ndarray  # descending positive diagonal of the X block
    values_y: np.ndarray  # descending positive diagonal of the Y block

    @property
    def rank(self) -> int:
        return self.x + self.y + self.d


@dataclass(frozen=True)
class HsvdDecomposition:
    L: np.ndarray  # in O(p, q)
    R: np.ndarray  # in O(N)
    canon: CanonicalForm
    warnings: tuple[str, ...] = field(default=())


def _split_eigen(values: np.ndarray, tol_rank: float) -> tuple[list[int], list[int], list[int], list[str]]:
    """Partition eigenvalue indices into positive / negative / zero with warnings."""
    scale = max(1.0, float(np.max(np.abs(values))) if values.size else 0.0)
    thresh = tol_rank * scale
    pos, neg, zer, warnings = [], [], [], []
    for i, lam in enumerate(values):
        if lam > thresh:
            pos.append(i)
        elif lam < -thresh:
            neg.append(i)
        else:
            zer.append(i)
        if 0.01 * thresh < abs(lam) <= NEAR_RANK * scale:
            warnings.append(
                f"eigenvalue {lam:.3e} is close to the rank threshold "
                f"{thresh:.3e}; class decision may be ill-conditioned"
            )
    return pos, neg, zer, warnings


def _rank(A: np.ndarray, tol_rank: float) -> int:
    G = A.T @ A
    ev = sym_eigen(G).values
    scale = max(1.0, float(np.max(np.abs(G))) if G.size else 0.0)
    return int(np.sum(ev > tol_rank * scale))


def canonical_params(A: np.ndarray, sig: Signature, tol: float = TOL_RANK) -> tuple[int, int, int]:
    """Parameters (x, y, d) from eigenvalue signs of A^T eta A and rank(A)."""
    A = np.asarray(A, dtype=float)
    eta = metric_diagonal(sig)
    W = A.T @ (eta[:, None] * A)
    pos, neg, _, _ = _split_eigen(sym_eigen(W).values, tol)
    x, y = len(pos), len(neg)
    d = _rank(A, tol) - x - y
    return x, y, max(d, 0)


def _eta_complement_basis(cols: list[np.ndarray], sig: Signature, tol_rank: float):
    """Metric-orthonormal basis of the eta-orthogonal complement of ``cols``.

    Returns (E, signs): columns of E satisfy e_i^T eta e_j = signs[i] * delta_ij,
    positive-norm vectors first.
    """
    n = sig.n
    eta = metric_diagonal(sig)
    if cols:
        B = np.array(cols) * eta  # rows are col_i^T eta
        BtB = B.T @ B
        eig = sym_eigen(BtB)
        scale = max(1.0, float(np.max(np.abs(BtB))))
        keep = eig.values <= tol_rank * scale
        basis = eig.vectors[:, keep]
    else:
        basis = np.eye(n)
    if basis.shape[1] == 0:
        return np.zeros((n, 0)), np.zeros(0)
    G = basis.T @ (eta[:, None] * basis)
    geig = sym_eigen(G)
    scale = max(1.0, float(np.max(np.abs(G))))
    E_cols, signs = [], []
    order = np.argsort(-geig.values, kind="stable")
    for k in order:
        mu = geig.values[k]
        if abs(mu) <= tol_rank * scale:
            raise HsvdError(
                "degenerate induced metric while completing the pseudo-orthogonal factor"
            )
        E_cols.append(basis @ geig.vectors[:, k] / np.sqrt(abs(mu)))
        signs.append(1.0 if mu > 0 else -1.0)
    return np.array(E_cols).T, np.array(signs)


def _identity_decomposition(A: np.ndarray, sig: Signature) -> HsvdDecomposition:
    n, N = A.shape
    canon = CanonicalForm(
        sigma=np.zeros((n, N)), x=0, y=0, d=0,
        values_x=np.zeros(0), values_y=np.zeros(0),
    )
    return HsvdDecomposition(L=np.eye(n), R=np.eye(N), canon=canon)


def hsvd(A: np.ndarray, sig: Signature, tol: float = TOL_RANK) -> HsvdDecomposition:
    """Hyperbolic SVD of an n x N matrix over the metric of ``sig``.

    Construction: eigendecompose W = A^T eta A; image vectors of nonzero
    eigendirections give the timelike/spacelike columns directly, isotropic
    directions are paired with dual null partners built inside the metric
    complement, and the remaining columns complete the factor to O(p, q).
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != sig.n:
        raise HsvdError(f"expected a {sig.n} x N matrix, got shape {A.shape}")
    n, N = A.shape
    if not np.all(np.isfinite(A)):
        raise HsvdError("matrix entries must be finite")
    if not np.any(A):
        return _identity_decomposition(A, sig)

    eta = metric_diagonal(sig)
    W = A.T @ (eta[:, None] * A)
    eig = sym_eigen(W)
    pos, neg, zer, warnings = _split_eigen(eig.values, tol)
    x, y = len(pos), len(neg)
    rank_A = _rank(A, tol)
    d = rank_A - x - y
    if d < 0:
        raise HsvdError(
            f"inconsistent rank decisions: rank(A) = {rank_A} but x + y = {x + y}; "
            "adjust tol_rank"
        )

    # order R columns: positive eigenvalues descending, negatives by ascending
    # eigenvalue (largest magnitude first), then the zero eigenspace
    pos.sort(key=lambda i: -eig.values[i])
    neg.sort(key=lambda i: eig.values[i])
    values_x = np.sqrt(eig.values[pos]) if pos else np.zeros(0)
    values_y = np.sqrt(-eig.values[neg]) if neg else np.zeros(0)

    # split the zero eigenspace of W into isotropic directions (A r != 0)
    # and the kernel of A, staying orthonormal
    iso = np.zeros((N, 0))
    ker = np.zeros((N, 0))
    if zer:
        Z = eig.vectors[:, zer]
        AZ = A @ Z
        K = AZ.T @ AZ
        keig = sym_eigen(K)
        scale = max(1.0, float(np.max(np.abs(K))))
        n_iso = int(np.sum(keig.values > tol * scale))
        if n_iso != d:
            raise HsvdError(
                f"isotropic subspace dimension {n_iso} does not match d = {d}; "
                "rank thresholds are inconsistent for this input"
            )
        iso = Z @ keig.vectors[:, :n_iso]
        ker = Z @ keig.vectors[:, n_iso:]
    R = np.hstack([eig.vectors[:, pos], eig.vectors[:, neg], iso, ker])

    # columns of M, where A = M Sigma R^T and M is in O(p, q)
    u_cols = [A @ eig.vectors[:, i] / np.sqrt(eig.values[i]) for i in pos]
    w_cols = [A @ eig.vectors[:, i] / np.sqrt(-eig.values[i]) for i in neg]

    if d > 0:
        V_iso = A @ iso  # n x d, totally isotropic, eta-orthogonal to u/w columns
        E, signs = _eta_complement_basis(u_cols + w_cols, sig, tol)
        coords = signs[:, None] * (E.T @ (eta[:, None] * V_iso))
        gram = coords.T @ coords
        flipped = E @ (signs[:, None] * coords)
        try:
            duals = 2.0 * flipped @ np.linalg.inv(gram)
        except np.linalg.LinAlgError as exc:
            raise HsvdError("isotropic directions are numerically dependent") from exc
        for c in range(d):
            v = V_iso[:, c]
            m = duals[:, c]
            u_cols.append((v + m) / 2.0)
            w_cols.append((v - m) / 2.0)

    # complete to a full O(p, q) basis
    need_p = sig.p - len(u_cols)
    need_q = sig.q - len(w_cols)
    if need_p < 0 or need_q < 0:
        raise HsvdError(
            f"block sizes exceed signature: need ({len(u_cols)}, {len(w_cols)}) "
            f"columns in signature ({sig.p}, {sig.q})"
        )
    if need_p or need_q:
        E, signs = _eta_complement_basis(u_cols + w_cols, sig, tol)
        got_p = int(np.sum(signs > 0))
        got_q = int(np.sum(signs < 0))
        if got_p != need_p or got_q != need_q:
            raise HsvdError(
                f"completion produced ({got_p}, {got_q}) directions where "
                f"({need_p}, {need_q}) were required"
            )
        u_cols += [E[:, k] for k in range(E.shape[1]) if signs[k] > 0]
        w_cols += [E[:, k] for k in range(E.shape[1]) if signs[k] < 0]

    M = np.array(u_cols + w_cols).T
    L = eta[:, None] * M * eta[None, :]

    sigma = np.zeros((n, N))
    for i, v in enumerate(values_x):
        sigma[i, i] = v
    for j, v in enumerate(values_y):
        sigma[sig.p + j, x + j] = v
    for c in range(d):
        sigma[x + c, x + y + c] = 1.0
        sigma[sig.p + y + c, x + y + c] = 1.0

    canon = CanonicalForm(sigma=sigma, x=x, y=y, d=d, values_x=values_x, values_y=values_y)
    return HsvdDecomposition(L=L, R=R, canon=canon, warnings=tuple(warnings))


def canonicalize_current(
    J: np.ndarray, sig: Signature, tol: float = TOL_RANK
) -> tuple[HsvdDecomposition, np.ndarray, np.ndarray]:
    """Factors Q in O(p, q) and P in SO(3) with Q J P equal to the canonical form.

    The HSVD gives L^T J R = Sigma, so Q = L^T and P = R; when det(R) = -1 both
    factors are negated (-Q stays pseudo-orthogonal and, for three columns,
    det(-P) = +1).
    """
    J = np.asarray(J, dtype=float)
    if J.ndim != 2 or J.shape[1] != 3:
        raise HsvdError(f"current must be n x 3, got shape {J.shape}")
    dec = hsvd(J, sig, tol)
    Q = dec.L.T.copy()
    P = dec.R.copy()
    if np.linalg.det(P) < 0.0:
        Q = -Q
        P = -P
    return dec, Q, P
