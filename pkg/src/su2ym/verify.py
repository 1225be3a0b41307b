"""Independent certification of candidate solutions.

Two tools live here: a literal evaluation of all 3n components of the
constant-field equations (double Levi-Civita contraction, indices moved with
the metric), and a seeded multi-start damped-Newton root finder for the
reduced three-variable systems. Neither shares code with the closed-form
solvers they are meant to check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Signature, metric_diagonal

__all__ = [
    "ResidualReport",
    "OracleResult",
    "MatchReport",
    "residual",
    "oracle_solve",
    "oracle_solve_many",
    "cross_check",
    "levi_civita",
]


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


_EPS = levi_civita()


@dataclass(frozen=True)
class ResidualReport:
    max_abs: float
    per_equation: np.ndarray  # n x 3 array of equation defects


def residual(A: np.ndarray, J: np.ndarray, sig: Signature) -> ResidualReport:
    """Defect of A_{mu c} A^mu_a A^nu_b eps^{ab}_d eps^{cd}_k = J^nu_k."""
    A = np.asarray(A, dtype=float)
    J = np.asarray(J, dtype=float)
    n = sig.n
    if A.shape != (n, 3) or J.shape != (n, 3):
        raise ValueError(f"expected two {n} x 3 matrices, got {A.shape} and {J.shape}")
    eta = metric_diagonal(sig)
    A_low = eta[:, None] * A  # A_{mu c} = eta_{mu mu} A^mu_c
    lhs = np.einsum("mc,ma,nb,abd,cdk->nk", A_low, A, A, _EPS, _EPS, optimize=True)
    defect = lhs - J
    return ResidualReport(max_abs=float(np.max(np.abs(defect))), per_equation=defect)


@dataclass(frozen=True)
class OracleResult:
    roots: np.ndarray  # r x dim array, deduplicated, lexicographically sorted
    starts_used: int
    seed: int


def _system(kind: str):
    """Residual and Jacobian callables; j broadcasts against the point rows."""

    if kind == "euclid":
        def F(b, j):
            b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2]
            return np.stack(
                [
                    b1 * (b2**2 + b3**2) - j[..., 0],
                    b2 * (b1**2 + b3**2) - j[..., 1],
                    b3 * (b1**2 + b2**2) - j[..., 2],
                ],
                axis=-1,
            )

        def Jac(b):
            b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2]
            rows = [
                [b2**2 + b3**2, 2 * b1 * b2, 2 * b1 * b3],
                [2 * b1 * b2, b1**2 + b3**2, 2 * b2 * b3],
                [2 * b1 * b3, 2 * b2 * b3, b1**2 + b2**2],
            ]
            return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)

        return F, Jac, 3

    if kind == "hyper":
        def F(b, j):
            b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2]
            return np.stack(
                [
                    b1 * (b2**2 - b3**2) - j[..., 0],
                    b2 * (b1**2 - b3**2) - j[..., 1],
                    b3 * (b1**2 + b2**2) - j[..., 2],
                ],
                axis=-1,
            )

        def Jac(b):
            b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2]
            rows = [
                [b2**2 - b3**2, 2 * b1 * b2, -2 * b1 * b3],
                [2 * b1 * b2, b1**2 - b3**2, -2 * b2 * b3],
                [2 * b1 * b3, 2 * b2 * b3, b1**2 + b2**2],
            ]
            return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)

        return F, Jac, 3

    if kind == "pair":
        def F(b, j):
            b1, b2 = b[..., 0], b[..., 1]
            return np.stack(
                [b1 * b2**2 - j[..., 0], b2 * b1**2 - j[..., 1]], axis=-1
            )

        def Jac(b):
            b1, b2 = b[..., 0], b[..., 1]
            rows = [[b2**2, 2 * b1 * b2], [2 * b1 * b2, b1**2]]
            return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)

        return F, Jac, 2

    raise ValueError(f"unknown system kind: {kind!r}")


_BACKTRACK = 0.5 ** np.arange(40)


def _newton(kind: str, x0: np.ndarray, jmat: np.ndarray, f_tol: np.ndarray):
    """Damped Newton on a flat batch of starts; returns (points, converged).

    The iteration polishes each start until its residual drops three orders
    of magnitude below ``f_tol``: degenerate roots converge only linearly and
    need the headroom so duplicate clusters collapse inside the deduplication
    radius. Starts whose Jacobian degenerates or whose backtracking stalls
    are accepted if already inside ``f_tol``, else dropped.
    """
    F, Jac, _ = _system(kind)
    x = x0.copy()
    m = len(x)
    active = np.ones(m, dtype=bool)
    converged = np.zeros(m, dtype=bool)
    f_exit = np.maximum(1e-3 * f_tol, 1e-14)
    for _ in range(160):
        if not np.any(active):
            break
        idx = np.nonzero(active)[0]
        f = F(x[idx], jmat[idx])
        res = np.max(np.abs(f), axis=-1)
        done = res <= f_exit[idx]
        converged[idx[done]] = True
        active[idx[done]] = False
        idx, f, res = idx[~done], f[~done], res[~done]
        if idx.size == 0:
            break
        Jm = Jac(x[idx])
        ok = np.abs(np.linalg.det(Jm)) > 1e-14
        converged[idx[~ok]] = res[~ok] <= f_tol[idx[~ok]]
        active[idx[~ok]] = False
        idx, f, res = idx[ok], f[ok], res[ok]
        if idx.size == 0:
            continue
        step = np.linalg.solve(Jm[ok], f[..., None])[..., 0]
        merit0 = np.sum(f * f, axis=-1)
        trial = x[idx][None, :, :] - _BACKTRACK[:, None, None] * step[None, :, :]
        merit = np.sum(F(trial, jmat[idx][None, :, :]) ** 2, axis=-1)
        improving = merit < merit0[None, :]
        has_impr = np.any(improving, axis=0)
        first = np.argmax(improving, axis=0)
        # stalled line searches stop here, counting if already good enough
        stalled = idx[~has_impr]
        converged[stalled] = res[~has_impr] <= f_tol[stalled]
        active[stalled] = False
        idx = idx[has_impr]
        if idx.size == 0:
            continue
        x[idx] = trial[first[has_impr], np.nonzero(has_impr)[0], :]
        runaway = np.max(np.abs(x[idx]), axis=-1) > 1e9
        active[idx[runaway]] = False
    if np.any(active):
        idx = np.nonzero(active)[0]
        res = np.max(np.abs(F(x[idx], jmat[idx])), axis=-1)
        converged[idx] = res <= f_tol[idx]
    return x, converged


def _starts_for(jvals: np.ndarray, dim: int, seed: int, n_starts: int):
    r = 2.0 * max(1.0, float(np.max(jvals)) ** (1.0 / 3.0) if jvals.size else 1.0)
    axis = np.linspace(-r, r, 4)
    grid = np.stack(np.meshgrid(*[axis] * dim, indexing="ij"), axis=-1).reshape(-1, dim)
    rng = np.random.default_rng(seed)
    n_extra = max(0, n_starts - grid.shape[0])
    # anisotropic right-hand sides push root components well beyond the cube
    # (one component can grow like a power of max(j)/min(j)), so the random
    # starts use signed per-coordinate log-uniform magnitudes up to r_hi
    pos = jvals[jvals > 0.0]
    ratio = float(np.max(pos) / np.min(pos)) if pos.size else 1.0
    r_hi = r * max(1.0, min(ratio, 1e6) ** (2.0 / 3.0))
    mag = 10.0 ** rng.uniform(np.log10(0.02 * r_hi), np.log10(r_hi), size=(n_extra, dim))
    sign = rng.choice([-1.0, 1.0], size=(n_extra, dim))
    return np.vstack([grid, sign * mag])[:n_starts], r


def _dedup(pts: np.ndarray, radius: float, dim: int) -> np.ndarray:
    roots: list[np.ndarray] = []
    for candidate in pts:
        if not any(np.max(np.abs(candidate - kept)) <= radius for kept in roots):
            roots.append(candidate)
    roots.sort(key=lambda v: tuple(np.round(v, 9)))
    return np.array(roots) if roots else np.zeros((0, dim))


def oracle_solve(
    kind: str,
    jvals,
    seed: int = 0,
    n_starts: int = 128,
    tol: float = 1e-10,
    include_zero_components: bool = True,
) -> OracleResult:
    """Multi-start damped Newton on one of the reduced systems.

    Starts come from a deterministic grid on the cube [-r, r]^dim with
    r = 2 * max(1, max(j)^(1/3)), padded with seeded uniform draws up to
    ``n_starts``. Converged points are deduplicated within 1e-6 * scale and
    sorted, so the result depends only on (seed, n_starts). Pass
    ``include_zero_components=False`` to discard roots with a zero component
    (useful when comparing against a single all-nonzero branch).
    """
    jvals = np.asarray(jvals, dtype=float)
    if np.any(jvals < 0.0):
        raise ValueError("oracle expects nonnegative right-hand sides")
    _, _, dim = _system(kind)
    starts, r = _starts_for(jvals, dim, seed, n_starts)
    scale_j = max(1.0, float(np.max(jvals)) if jvals.size else 1.0)
    jmat = np.broadcast_to(jvals, (len(starts), jvals.size))
    pts, converged = _newton(kind, starts, jmat, np.full(len(starts), tol * scale_j))
    pts = pts[converged]
    if not include_zero_components:
        pts = pts[np.min(np.abs(pts), axis=-1) > 1e-7 * max(1.0, r)]
    arr = _dedup(pts, 1e-6 * max(1.0, r), dim)
    return OracleResult(roots=arr, starts_used=len(starts), seed=seed)


def oracle_solve_many(
    kind: str,
    jrows,
    seed: int = 0,
    n_starts: int = 64,
    tol: float = 1e-10,
) -> list[OracleResult]:
    """Vectorized ``oracle_solve`` over many right-hand sides at once.

    Equivalent to calling ``oracle_solve`` per row but runs one flat Newton
    batch of size ``len(jrows) * n_starts``; results are per-row.
    """
    jrows = np.asarray(jrows, dtype=float)
    if np.any(jrows < 0.0):
        raise ValueError("oracle expects nonnegative right-hand sides")
    _, _, dim = _system(kind)
    n_cases = len(jrows)
    starts = np.zeros((n_cases, n_starts, dim))
    radii = np.zeros(n_cases)
    f_tol = np.zeros(n_cases)
    for i, j in enumerate(jrows):
        starts[i], radii[i] = _starts_for(j, dim, seed + i, n_starts)
        f_tol[i] = tol * max(1.0, float(np.max(j)))
    jmat = np.repeat(jrows, n_starts, axis=0)
    flat_tol = np.repeat(f_tol, n_starts)
    pts, converged = _newton(kind, starts.reshape(-1, dim), jmat, flat_tol)
    pts = pts.reshape(n_cases, n_starts, dim)
    converged = converged.reshape(n_cases, n_starts)
    out = []
    for i in range(n_cases):
        arr = _dedup(pts[i][converged[i]], 1e-6 * max(1.0, radii[i]), dim)
        out.append(OracleResult(roots=arr, starts_used=n_starts, seed=seed + i))
    return out


@dataclass(frozen=True)
class MatchReport:
    matched: bool
    count: int
    unmatched_enumerated: list
    unmatched_oracle: list
    warnings: tuple[str, ...] = ()


def cross_check(enumerated, oracle: OracleResult, tol: float = 1e-7) -> MatchReport:
    """Bijection test between enumerated isolated solutions and oracle roots.

    ``enumerated`` is a SolutionSet or an iterable of length-dim vectors (or
    objects with a ``b`` attribute). Families are outside the oracle's reach
    and are not compared.
    """
    warnings: list[str] = []
    if hasattr(enumerated, "solutions"):
        warnings.extend(getattr(enumerated, "warnings", []))
        enumerated = enumerated.solutions
    vecs = []
    for item in enumerated:
        b = getattr(item, "b", item)
        vecs.append(np.asarray(b, dtype=float))

    remaining = list(range(len(oracle.roots)))
    unmatched_enum = []
    for v in vecs:
        hit = None
        for ridx in remaining:
            if np.max(np.abs(oracle.roots[ridx] - v)) <= tol * max(1.0, float(np.max(np.abs(v)))):
                hit = ridx
                break
        if hit is None:
            unmatched_enum.append(v)
        else:
            remaining.remove(hit)
    unmatched_oracle = [oracle.roots[i] for i in remaining]
    matched = not unmatched_enum and not unmatched_oracle
    return MatchReport(
        matched=matched,
        count=len(vecs) - len(unmatched_enum),
        unmatched_enumerated=unmatched_enum,
        unmatched_oracle=unmatched_oracle,
        warnings=tuple(warnings),
    )
