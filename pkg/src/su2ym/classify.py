"""End-to-end enumeration of constant solutions for a given current.

Pipeline: bring the current J to canonical form, read off the class
(d_J, x_J, y_J) plus a sub-case predicate on the hyperbolic singular values,
dispatch to the matching table rows to build every potential in the canonical
frame, then transform back and attach strength components and the F^2
invariant.

The table rows are encoded one at a time in ``ROWS`` so coverage against the
published classification can be audited row by row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

import numpy as np

from . import cubic, verify
from .cubic import cbrt
from .hsvd import CanonicalForm, canonicalize_current, canonical_params, hsvd
from .linalg import Signature, metric_diagonal

COND_TOL = 1e-9  # relative tolerance for sub-case equality predicates
NEAR_TOL = 1e-6  # proximity that triggers a near-degenerate warning
RESIDUAL_TOL = 1e-9

__all__ = [
    "ClassifyError",
    "ClassKey",
    "Potential",
    "Strength",
    "PotentialFamily",
    "SolutionEntry",
    "SolutionReport",
    "Row",
    "ROWS",
    "f2_coincidence",
    "class_of",
    "canonical_current_matrix",
    "enumerate_canonical",
    "strength_of",
    "to_original_frame",
    "solve_all",
]


class ClassifyError(Exception):
    pass


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassKey:
    dJ: int
    xJ: int
    yJ: int
    subcase: str
    jvals: tuple[float, ...]
    warnings: tuple[str, ...] = ()

    @property
    def cls(self) -> tuple[int, int, int]:
        return (self.dJ, self.xJ, self.yJ)


@dataclass(frozen=True)
class Potential:
    A: np.ndarray
    params: tuple[int, int, int]  # (d_A, x_A, y_A)
    frame: str  # "canonical" | "original"
    row: str  # table-row id this solution belongs to
    branch: str = ""


@dataclass(frozen=True)
class Strength:
    tensor: np.ndarray  # antisymmetric (n, n, 3)
    f2_scalar: float

    def nonzero_components(self, tol: float = 1e-12):
        n = self.tensor.shape[0]
        out = []
        for mu in range(n):
            for nu in range(mu + 1, n):
                for c in range(3):
                    v = self.tensor[mu, nu, c]
                    if abs(v) > tol:
                        out.append((mu, nu, c, float(v)))
        return out


@dataclass(frozen=True)
class PotentialFamily:
    """One-parameter family of potentials; the exact list never samples it."""

    parameter: str
    domain: str
    description: str
    generator: Callable[[float], np.ndarray]
    params: tuple[int, int, int]
    frame: str
    row: str
    f2_scalar: float = 0.0  # constant along every family the tables list


@dataclass(frozen=True)
class SolutionEntry:
    potential: Potential
    strength: Strength
    residual_max: float


@dataclass
class SolutionReport:
    key: ClassKey
    sig: Signature
    exact: list[SolutionEntry]
    families: list[PotentialFamily]
    frame: str
    notes: tuple[str, ...] = ()

    @property
    def count_label(self) -> str:
        return "inf" if self.families else str(len(self.exact))


STABILIZER_NOTE = (
    "solutions are listed up to the stabilizer of the canonical current: group "
    "elements fixing it generate further solutions from the listed ones"
)


# ---------------------------------------------------------------------------
# F^2 coincidence constants (the B* split of the equal-pair six-solution rows)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def f2_coincidence() -> tuple[float, float, float]:
    """(s*, B*, z+*) where the two F^2 branches of the equal-pair case meet.

    Solved from the defining equations at unit smaller value and ratio B:
    equality of K^2(2z^2-1)/(2z^(4/3)) for the z-branch with K^2(1+s^2)/2 for
    the s-branch, where z = (-1+sqrt(1+B^2))/B and s = (B+sqrt(B^2-8))/2.
    """

    def gap(B: float) -> float:
        z = (-1.0 + math.sqrt(1.0 + B * B)) / B
        f2_z = (B / 2.0) ** (4.0 / 3.0) * (2.0 * z * z - 1.0) / (2.0 * z ** (4.0 / 3.0))
        s = (B + math.sqrt(B * B - 8.0)) / 2.0
        f2_s = (1.0 / s) ** (4.0 / 3.0) * (1.0 + s * s) / 2.0
        return f2_z - f2_s

    lo, hi = 2.0 * math.sqrt(2.0) + 1e-6, 64.0
    if not gap(lo) < 0.0 < gap(hi):
        raise ClassifyError("coincidence bracket failed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    B = 0.5 * (lo + hi)
    s = (B + math.sqrt(B * B - 8.0)) / 2.0
    z = (-1.0 + math.sqrt(1.0 + B * B)) / B
    return s, B, z


# ---------------------------------------------------------------------------
# class key
# ---------------------------------------------------------------------------


def _close(a: float, b: float, scale: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1e-300, scale)


def _near(a: float, b: float, scale: float) -> bool:
    gap = abs(a - b)
    s = max(1e-300, scale)
    return COND_TOL * s < gap <= NEAR_TOL * s


def _ratio_split(j_small: float, j_big: float, warnings: list[str], names: tuple[str, str]):
    """Sub-case of the equal-pair branch: compare j_big against 2*sqrt(2)*j_small
    and, above the threshold, test the ratio against B*."""
    small, big = names
    thresh = 2.0 * math.sqrt(2.0) * j_small
    scale = max(j_small, j_big)
    if _near(j_big, thresh, scale):
        warnings.append(f"near-degenerate: {big} = 2*sqrt(2)*{small}")
    if _close(j_big, thresh, scale, COND_TOL):
        return f"= {big}/(2*sqrt(2))"
    if j_big < thresh:
        return f"> {big}/(2*sqrt(2))"
    _, B_star, _ = f2_coincidence()
    ratio = j_big / j_small
    if _near(ratio, B_star, B_star):
        warnings.append(f"near-degenerate: {big}/{small} = B*")
    if _close(ratio, B_star, B_star, COND_TOL):
        return f"< {big}/(2*sqrt(2)), {big}/{small} = B*"
    return f"< {big}/(2*sqrt(2)), {big}/{small} != B*"


def _power_split(j_top: float, j_a: float, j_b: float, warnings: list[str], names):
    top, a, b = names
    lhs = j_top ** (2.0 / 3.0)
    rhs = j_a ** (2.0 / 3.0) + j_b ** (2.0 / 3.0)
    scale = max(lhs, rhs)
    if _near(lhs, rhs, scale):
        warnings.append(f"near-degenerate: {top}^(2/3) = {a}^(2/3)+{b}^(2/3)")
    if _close(lhs, rhs, scale, COND_TOL):
        rel = "="
    elif lhs > rhs:
        rel = ">"
    else:
        rel = "<"
    return f"{top}^(2/3) {rel} {a}^(2/3)+{b}^(2/3)"


def _subcase(cls: tuple[int, int, int], j: tuple[float, ...], warnings: list[str]) -> str:
    scale = max(j) if j else 0.0
    if cls in ((0, 3, 0), (0, 0, 3)):
        j1, j2, j3 = j
        eq12 = _close(j1, j2, scale, COND_TOL)
        eq23 = _close(j2, j3, scale, COND_TOL)
        for name, a, b in (("j1=j2", j1, j2), ("j2=j3", j2, j3)):
            if _near(a, b, scale):
                warnings.append(f"near-degenerate: {name}")
        if eq12 and eq23:
            return "j1=j2=j3"
        if eq12:
            return "j1=j2>j3"
        if eq23:
            return "j1>j2=j3"
        return "all different"
    if cls == (0, 2, 1):
        j1, j2, j3 = j
        if _near(j1, j2, scale):
            warnings.append("near-degenerate: j1=j2")
        if _close(j1, j2, scale, COND_TOL):
            return "j1=j2 " + _ratio_split(j1, j3, warnings, ("j1", "j3"))
        return "j1!=j2, " + _power_split(j3, j1, j2, warnings, ("j3", "j1", "j2"))
    if cls == (0, 1, 2):
        j1, j2, j3 = j
        if _near(j2, j3, scale):
            warnings.append("near-degenerate: j2=j3")
        if _close(j2, j3, scale, COND_TOL):
            return "j2=j3 " + _ratio_split(j2, j1, warnings, ("j2", "j1"))
        return "j2!=j3, " + _power_split(j1, j2, j3, warnings, ("j1", "j2", "j3"))
    if cls == (0, 1, 1):
        j1, j2 = j
        if _near(j1, j2, scale):
            warnings.append("near-degenerate: j1=j2")
        if _close(j1, j2, scale, COND_TOL):
            return "j1=j2"
        return "j2>j1" if j2 > j1 else "j1>j2"
    if cls == (1, 1, 1):
        j1, j2 = j
        if _near(j1, j2, scale):
            warnings.append("near-degenerate: j1=j2")
        return "j1=j2" if _close(j1, j2, scale, COND_TOL) else "j1!=j2"
    if cls == (0, 0, 0):
        return "zero"
    return ""


def key_from_canon(canon: CanonicalForm) -> ClassKey:
    jvals = tuple(float(v) for v in canon.values_x) + tuple(float(v) for v in canon.values_y)
    cls = (canon.d, canon.x, canon.y)
    warnings: list[str] = []
    subcase = _subcase(cls, jvals, warnings)
    return ClassKey(
        dJ=canon.d, xJ=canon.x, yJ=canon.y, subcase=subcase, jvals=jvals,
        warnings=tuple(warnings),
    )


def class_of(J: np.ndarray, sig: Signature, tol: float = 1e-9) -> ClassKey:
    """Class parameters, sub-case label and hyperbolic singular values of J."""
    dec = hsvd(np.asarray(J, dtype=float), sig, tol)
    key = key_from_canon(dec.canon)
    if dec.warnings:
        key = replace(key, warnings=key.warnings + dec.warnings)
    return key


def canonical_current_matrix(key: ClassKey, sig: Signature) -> np.ndarray:
    """The canonical current matrix for a class key (X, Y and unit d-blocks)."""
    d, x, y = key.dJ, key.xJ, key.yJ
    if x + d > sig.p or y + d > sig.q or x + y + d > 3:
        raise ClassifyError(f"class {key.cls} does not fit signature ({sig.p}, {sig.q})")
    J = np.zeros((sig.n, 3))
    for i in range(x):
        J[i, i] = key.jvals[i]
    for i in range(y):
        J[sig.p + i, x + i] = key.jvals[x + i]
    for c in range(d):
        J[x + c, x + y + c] = 1.0
        J[sig.p + y + c, x + y + c] = 1.0
    return J


# ---------------------------------------------------------------------------
# strengths
# ---------------------------------------------------------------------------


def strength_of(A: np.ndarray, sig: Signature) -> Strength:
    """Strength components F^{mu nu}_c = -A^mu_a A^nu_b eps_{abc} and the
    scalar coefficient of the identity in F_{mu nu} F^{mu nu}."""
    A = np.asarray(A, dtype=float)
    eps = verify.levi_civita()
    tensor = -np.einsum("ma,nb,abc->mnc", A, A, eps)
    eta = metric_diagonal(sig)
    weight = np.outer(eta, eta)
    sq = np.sum(tensor**2, axis=2)
    f2 = -0.5 * float(np.sum(np.triu(weight * sq, k=1)))
    return Strength(tensor=tensor, f2_scalar=f2)


# ---------------------------------------------------------------------------
# builders (canonical frame)
# ---------------------------------------------------------------------------


def _placed(sig: Signature, entries) -> np.ndarray:
    A = np.zeros((sig.n, 3))
    for r, c, v in entries:
        A[r, c] = v
    return A


def _pot(sig: Signature, entries, row: str, branch: str = "") -> Potential:
    A = _placed(sig, entries)
    return Potential(A=A, params=canonical_params(A, sig), frame="canonical", row=row, branch=branch)


def _triple_potentials(sig, sols, mapper, row):
    out = []
    for s in sols:
        out.append(_pot(sig, mapper(s.b), row, branch=s.branch))
    return out


def _build_030(key, sig):
    j1, j2, j3 = key.jvals
    res = cubic.solve_euclid_triple(j1, j2, j3)
    pots = _triple_potentials(
        sig, res.solutions, lambda b: [(0, 0, -b[0]), (1, 1, -b[1]), (2, 2, -b[2])], "030"
    )
    return pots, [], res.warnings


def _build_003(key, sig):
    j1, j2, j3 = key.jvals
    res = cubic.solve_euclid_triple(j1, j2, j3)
    p = sig.p
    pots = _triple_potentials(
        sig, res.solutions, lambda b: [(p, 0, b[0]), (p + 1, 1, b[1]), (p + 2, 2, b[2])], "003"
    )
    return pots, [], res.warnings


def _build_021(key, sig):
    j1, j2, j3 = key.jvals
    res = cubic.solve_hyper_triple(j1, j2, j3)
    p = sig.p
    pots = _triple_potentials(
        sig, res.solutions, lambda b: [(0, 0, -b[0]), (1, 1, -b[1]), (p, 2, -b[2])], "021"
    )
    return pots, [], res.warnings


def _build_012(key, sig):
    # the reduced system sees the right-hand sides in the order (j2, j3, j1)
    j1, j2, j3 = key.jvals
    res = cubic.solve_hyper_triple(j2, j3, j1)
    p = sig.p
    pots = _triple_potentials(
        sig, res.solutions, lambda b: [(0, 0, b[2]), (p, 1, b[0]), (p + 1, 2, b[1])], "012"
    )
    return pots, [], res.warnings


def _build_020(key, sig):
    j1, j2 = key.jvals
    a1, a2 = -cbrt(j2 * j2 / j1), -cbrt(j1 * j1 / j2)
    return [_pot(sig, [(0, 0, a1), (1, 1, a2)], "020")], [], []


def _build_002(key, sig):
    j1, j2 = key.jvals
    p = sig.p
    a1, a2 = cbrt(j2 * j2 / j1), cbrt(j1 * j1 / j2)
    return [_pot(sig, [(p, 0, a1), (p + 1, 1, a2)], "002")], [], []


def _build_011(key, sig):
    j1, j2 = key.jvals
    p = sig.p
    pots = [
        _pot(sig, [(0, 0, cbrt(j2 * j2 / j1)), (p, 1, -cbrt(j1 * j1 / j2))], "011-base")
    ]
    warnings: list[str] = []
    if key.subcase == "j1=j2" and sig.p >= 2 and sig.q >= 2:
        pots.append(
            _pot(
                sig,
                [(0, 0, cbrt(j1)), (1, 2, 1.0), (p, 1, -cbrt(j2)), (p + 1, 2, 1.0)],
                "011-extra-eq",
            )
        )
    elif key.subcase == "j2>j1" and sig.p >= 2:
        res = cubic.solve_hyper_triple(0.0, j1, j2)
        warnings += res.warnings
        quad = [s for s in res.solutions if s.b[0] != 0.0]
        pots += _triple_potentials(
            sig, quad, lambda b: [(0, 0, -b[1]), (1, 2, b[0]), (p, 1, -b[2])], "011-extra-p"
        )
    elif key.subcase == "j1>j2" and sig.q >= 2:
        res = cubic.solve_hyper_triple(0.0, j2, j1)
        warnings += res.warnings
        quad = [s for s in res.solutions if s.b[0] != 0.0]
        pots += _triple_potentials(
            sig, quad, lambda b: [(0, 0, b[2]), (p, 1, b[1]), (p + 1, 2, b[0])], "011-extra-q"
        )
    return pots, [], warnings


def _build_010(key, sig):
    if sig.q < 2:
        return [], [], []
    (j1,) = key.jvals
    p = sig.p
    res = cubic.solve_hyper_triple(0.0, 0.0, j1)
    pots = _triple_potentials(
        sig, res.solutions, lambda b: [(0, 0, b[2]), (p, 1, b[0]), (p + 1, 2, b[1])], "010-quad"
    )
    return pots, [], res.warnings


def _build_001(key, sig):
    if sig.p < 2:
        return [], [], []
    (j1,) = key.jvals
    p = sig.p
    res = cubic.solve_hyper_triple(0.0, 0.0, j1)
    pots = _triple_potentials(
        sig, res.solutions, lambda b: [(p, 0, -b[2]), (0, 1, b[0]), (1, 2, b[1])], "001-quad"
    )
    return pots, [], res.warnings


def _family(sig, row, description, params, gen) -> PotentialFamily:
    return PotentialFamily(
        parameter="a1",
        domain="R\\{0}",
        description=description,
        generator=gen,
        params=params,
        frame="canonical",
        row=row,
    )


def _build_000(key, sig):
    p = sig.p
    pots = [_pot(sig, [], "000-zero")]
    pots.append(_pot(sig, [(0, 0, 1.0), (p, 0, 1.0)], "000-d1"))
    if sig.p >= 2 and sig.q >= 2:
        pots.append(
            _pot(sig, [(0, 0, 1.0), (1, 1, 1.0), (p, 0, 1.0), (p + 1, 1, 1.0)], "000-d2")
        )
    if sig.p >= 3 and sig.q >= 3:
        entries = [(k, k, 1.0) for k in range(3)] + [(p + k, k, 1.0) for k in range(3)]
        pots.append(_pot(sig, entries, "000-d3"))

    fams = [
        _family(
            sig, "000-fam-x", "single timelike component a1", (0, 1, 0),
            lambda t, s=sig: _placed(s, [(0, 0, t)]),
        ),
        _family(
            sig, "000-fam-y", "single spacelike component a1", (0, 0, 1),
            lambda t, s=sig: _placed(s, [(s.p, 0, t)]),
        ),
    ]
    return pots, fams, []


def _build_120(key, sig):
    j1, j2 = key.jvals
    p = sig.p
    a1, a2 = -cbrt(j2 * j2 / j1), -cbrt(j1 * j1 / j2)
    beta = -1.0 / (a1 * a1 + a2 * a2)
    ent = [(0, 0, a1), (1, 1, a2), (2, 2, beta), (p, 2, beta)]
    return [_pot(sig, ent, "120")], [], []


def _build_102(key, sig):
    j1, j2 = key.jvals
    p = sig.p
    a1, a2 = cbrt(j2 * j2 / j1), cbrt(j1 * j1 / j2)
    beta = 1.0 / (a1 * a1 + a2 * a2)
    ent = [(0, 2, beta), (p, 0, a1), (p + 1, 1, a2), (p + 2, 2, beta)]
    return [_pot(sig, ent, "102")], [], []


def _build_111(key, sig):
    if key.subcase == "j1=j2":
        return [], [], []
    j1, j2 = key.jvals
    p = sig.p
    a1, a2 = cbrt(j2 * j2 / j1), -cbrt(j1 * j1 / j2)
    beta = -1.0 / (a1 * a1 - a2 * a2)
    ent = [(0, 0, a1), (1, 2, beta), (p, 1, a2), (p + 1, 2, beta)]
    return [_pot(sig, ent, "111-one")], [], []


def _build_100(key, sig):
    fams = []
    p = sig.p
    if sig.p >= 2:
        fams.append(
            _family(
                sig, "100-fam-p", "timelike a1 with null pair scaled by -1/a1^2",
                (1, 1, 0),
                lambda t, s=sig: _placed(
                    s, [(0, 0, -1.0 / (t * t)), (1, 1, t), (s.p, 0, -1.0 / (t * t))]
                ),
            )
        )
    if sig.q >= 2:
        fams.append(
            _family(
                sig, "100-fam-q", "spacelike a1 with null pair scaled by 1/a1^2",
                (1, 0, 1),
                lambda t, s=sig: _placed(
                    s, [(0, 0, 1.0 / (t * t)), (s.p, 0, 1.0 / (t * t)), (s.p + 1, 1, t)]
                ),
            )
        )
    return [], fams, []


def _build_200(key, sig):
    fams = []
    if sig.p >= 3:
        fams.append(
            _family(
                sig, "200-fam-p", "timelike a1 with double null pair scaled by -1/a1^2",
                (2, 1, 0),
                lambda t, s=sig: _placed(
                    s,
                    [
                        (0, 0, -1.0 / (t * t)), (1, 1, -1.0 / (t * t)), (2, 2, t),
                        (s.p, 0, -1.0 / (t * t)), (s.p + 1, 1, -1.0 / (t * t)),
                    ],
                ),
            )
        )
    if sig.q >= 3:
        fams.append(
            _family(
                sig, "200-fam-q", "spacelike a1 with double null pair scaled by 1/a1^2",
                (2, 0, 1),
                lambda t, s=sig: _placed(
                    s,
                    [
                        (0, 0, 1.0 / (t * t)), (1, 1, 1.0 / (t * t)),
                        (s.p, 0, 1.0 / (t * t)), (s.p + 1, 1, 1.0 / (t * t)),
                        (s.p + 2, 2, t),
                    ],
                ),
            )
        )
    return [], fams, []


def _build_empty(key, sig):
    return [], [], []


_BUILDERS = {
    (0, 3, 0): _build_030,
    (0, 0, 3): _build_003,
    (0, 2, 1): _build_021,
    (0, 1, 2): _build_012,
    (0, 2, 0): _build_020,
    (0, 0, 2): _build_002,
    (0, 1, 1): _build_011,
    (0, 1, 0): _build_010,
    (0, 0, 1): _build_001,
    (0, 0, 0): _build_000,
    (1, 2, 0): _build_120,
    (1, 0, 2): _build_102,
    (1, 1, 1): _build_111,
    (1, 1, 0): _build_empty,
    (1, 0, 1): _build_empty,
    (1, 0, 0): _build_100,
    (2, 1, 0): _build_empty,
    (2, 0, 1): _build_empty,
    (2, 0, 0): _build_200,
    (3, 0, 0): _build_empty,
}


def enumerate_canonical(key: ClassKey, sig: Signature) -> SolutionReport:
    """All solutions in the canonical frame for a class key and signature."""
    if key.cls not in _BUILDERS:
        raise ClassifyError(f"inconsistent class key {key.cls}")
    if key.xJ + key.dJ > sig.p or key.yJ + key.dJ > sig.q:
        raise ClassifyError(f"class {key.cls} does not fit signature ({sig.p}, {sig.q})")
    pots, fams, warnings = _BUILDERS[key.cls](key, sig)
    J_can = canonical_current_matrix(key, sig)
    scale = max(1.0, float(np.max(np.abs(J_can))))
    entries = []
    for pot in pots:
        rep = verify.residual(pot.A, J_can, sig)
        if rep.max_abs > RESIDUAL_TOL * scale:
            raise ClassifyError(
                f"constructed potential misses the canonical current: residual "
                f"{rep.max_abs:.3e} (row {pot.row}, branch {pot.branch!r})"
            )
        entries.append(
            SolutionEntry(potential=pot, strength=strength_of(pot.A, sig), residual_max=rep.max_abs)
        )
    key_all = replace(key, warnings=key.warnings + tuple(warnings))
    return SolutionReport(
        key=key_all, sig=sig, exact=entries, families=fams, frame="canonical",
        notes=(STABILIZER_NOTE,),
    )


# ---------------------------------------------------------------------------
# frame transport and the full pipeline
# ---------------------------------------------------------------------------


def to_original_frame(report: SolutionReport, Q: np.ndarray, P: np.ndarray) -> SolutionReport:
    """Transport a canonical-frame report back through A -> Q^-1 A P^-1."""
    sig = report.sig
    eta = metric_diagonal(sig)
    Q = np.asarray(Q, dtype=float)
    P = np.asarray(P, dtype=float)
    Qi = eta[:, None] * Q.T * eta[None, :]
    Pi = P.T

    def back(A: np.ndarray) -> np.ndarray:
        return Qi @ A @ Pi

    exact = []
    for entry in report.exact:
        A = back(entry.potential.A)
        pot = replace(entry.potential, A=A, frame="original")
        exact.append(
            SolutionEntry(potential=pot, strength=strength_of(A, sig), residual_max=entry.residual_max)
        )
    fams = []
    for fam in report.families:
        gen = fam.generator
        fams.append(
            replace(fam, generator=(lambda t, g=gen: back(g(t))), frame="original")
        )
    return SolutionReport(
        key=report.key, sig=sig, exact=exact, families=fams, frame="original",
        notes=report.notes,
    )


def solve_all(
    J: np.ndarray,
    sig: Signature,
    tol_rank: float = 1e-9,
    frame: str = "original",
) -> tuple[SolutionReport, np.ndarray, np.ndarray]:
    """Canonicalize J, classify, enumerate, and return the report with (Q, P).

    The report is transported to the requested frame; residuals of the exact
    solutions are re-certified against the frame's current.
    """
    J = np.asarray(J, dtype=float)
    dec, Q, P = canonicalize_current(J, sig, tol_rank)
    key = key_from_canon(dec.canon)
    if dec.warnings:
        key = replace(key, warnings=key.warnings + dec.warnings)
    report = enumerate_canonical(key, sig)
    if frame == "original":
        report = to_original_frame(report, Q, P)
        scale = max(1.0, float(np.max(np.abs(J))))
        exact = []
        for entry in report.exact:
            rep = verify.residual(entry.potential.A, J, sig)
            if rep.max_abs > 10.0 * (entry.residual_max + RESIDUAL_TOL * scale):
                raise ClassifyError(
                    f"original-frame residual {rep.max_abs:.3e} exceeds tolerance"
                )
            exact.append(replace(entry, residual_max=rep.max_abs))
        report.exact = exact
    elif frame != "canonical":
        raise ClassifyError(f"unknown frame {frame!r}")
    return report, Q, P


# ---------------------------------------------------------------------------
# reduced-system view (for oracle cross-checks)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedSystem:
    """How a class maps onto one of the reduced systems the oracle can solve."""

    kind: str  # "euclid" | "hyper" | "pair"
    jvals: tuple[float, ...]
    rows: frozenset[str]  # row ids whose solutions are roots of the system
    extract: Callable[[np.ndarray, Signature], tuple[float, ...]]


def reduced_system(key: ClassKey, sig: Signature) -> ReducedSystem | None:
    """Reduced system for a class, or None when no full triple/pair reduction
    covers every representable solution at this signature."""
    j = key.jvals
    if key.cls == (0, 3, 0):
        return ReducedSystem(
            "euclid", j, frozenset({"030"}),
            lambda A, s: (-A[0, 0], -A[1, 1], -A[2, 2]),
        )
    if key.cls == (0, 0, 3):
        return ReducedSystem(
            "euclid", j, frozenset({"003"}),
            lambda A, s: (A[s.p, 0], A[s.p + 1, 1], A[s.p + 2, 2]),
        )
    if key.cls == (0, 2, 1):
        return ReducedSystem(
            "hyper", j, frozenset({"021"}),
            lambda A, s: (-A[0, 0], -A[1, 1], -A[s.p, 2]),
        )
    if key.cls == (0, 1, 2):
        return ReducedSystem(
            "hyper", (j[1], j[2], j[0]), frozenset({"012"}),
            lambda A, s: (A[s.p, 1], A[s.p + 1, 2], A[0, 0]),
        )
    if key.cls == (0, 1, 1):
        if key.subcase == "j1>j2":
            if sig.q < 2:
                return None
            return ReducedSystem(
                "hyper", (0.0, j[1], j[0]),
                frozenset({"011-base", "011-extra-q"}),
                lambda A, s: (A[s.p + 1, 2], A[s.p, 1], A[0, 0]),
            )
        if key.subcase == "j2>j1" and sig.p < 2:
            return None
        return ReducedSystem(
            "hyper", (0.0, j[0], j[1]),
            frozenset({"011-base", "011-extra-p"}),
            lambda A, s: (A[1, 2], -A[0, 0], -A[s.p, 1]),
        )
    if key.cls == (0, 1, 0):
        if sig.q < 2:
            return None
        return ReducedSystem(
            "hyper", (0.0, 0.0, j[0]), frozenset({"010-quad"}),
            lambda A, s: (A[s.p, 1], A[s.p + 1, 2], A[0, 0]),
        )
    if key.cls == (0, 0, 1):
        if sig.p < 2:
            return None
        return ReducedSystem(
            "hyper", (0.0, 0.0, j[0]), frozenset({"001-quad"}),
            lambda A, s: (A[0, 1], A[1, 2], -A[s.p, 0]),
        )
    if key.cls == (0, 2, 0):
        return ReducedSystem(
            "pair", j, frozenset({"020"}), lambda A, s: (-A[0, 0], -A[1, 1])
        )
    if key.cls == (0, 0, 2):
        return ReducedSystem(
            "pair", j, frozenset({"002"}), lambda A, s: (A[s.p, 0], A[s.p + 1, 1])
        )
    return None


# ---------------------------------------------------------------------------
# table rows (the published classification, one entry per row)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Row:
    table: int
    cls: tuple[int, int, int]
    cond: str  # "" matches every sub-case of the class
    row_id: str
    count: str  # "0", "1", "2", "4", "6" or "inf"
    pq_ok: Callable[[int, int], bool]
    pq_min: tuple[int, int]
    jsample: tuple[float, ...]
    f2_count: str = ""  # distinct F^2 values among the row's solutions, if fixed


def _sqrt8() -> float:
    return 2.0 * math.sqrt(2.0)


def _b_star() -> float:
    return f2_coincidence()[1]


def _rows() -> list[Row]:
    s8 = _sqrt8()
    bs = _b_star()
    bd21 = (1.0 + 2.0 ** (2.0 / 3.0)) ** 1.5  # j3 with j1=1, j2=2 on the power boundary
    rows: list[Row] = []

    def add(table, cls, cond, row_id, count, pq_ok, pq_min, jsample, f2_count=""):
        rows.append(Row(table, cls, cond, row_id, count, pq_ok, pq_min, jsample, f2_count))

    # --- Table 2: d_J = 0, rank 3 ---
    for cls, rid, pq_ok, pq_min in (
        ((0, 3, 0), "030", lambda p, q: p >= 3, (3, 1)),
        ((0, 0, 3), "003", lambda p, q: q >= 3, (1, 3)),
    ):
        add(2, cls, "j1=j2=j3", rid, "1", pq_ok, pq_min, (2.0, 2.0, 2.0), "1")
        add(2, cls, "j1=j2>j3", rid, "2", pq_ok, pq_min, (3.0, 3.0, 1.0), "2")
        add(2, cls, "j1>j2=j3", rid, "2", pq_ok, pq_min, (5.0, 2.0, 2.0), "1")
        add(2, cls, "all different", rid, "2", pq_ok, pq_min, (3.0, 2.0, 1.0), "2")
    pq21 = lambda p, q: p >= 2 and q >= 1
    add(2, (0, 2, 1), "j1=j2 < j3/(2*sqrt(2)), j3/j1 = B*", "021", "6", pq21, (2, 1), (1.0, 1.0, bs), "3")
    add(2, (0, 2, 1), "j1=j2 < j3/(2*sqrt(2)), j3/j1 != B*", "021", "6", pq21, (2, 1), (1.0, 1.0, 8.0), "4")
    add(2, (0, 2, 1), "j1=j2 = j3/(2*sqrt(2))", "021", "4", pq21, (2, 1), (1.0, 1.0, s8), "2")
    add(2, (0, 2, 1), "j1=j2 > j3/(2*sqrt(2))", "021", "2", pq21, (2, 1), (1.0, 1.0, 2.0), "2")
    add(2, (0, 2, 1), "j1!=j2, j3^(2/3) > j1^(2/3)+j2^(2/3)", "021", "6", pq21, (2, 1), (1.0, 2.0, 14.0))
    add(2, (0, 2, 1), "j1!=j2, j3^(2/3) = j1^(2/3)+j2^(2/3)", "021", "4", pq21, (2, 1), (1.0, 2.0, bd21), "4")
    add(2, (0, 2, 1), "j1!=j2, j3^(2/3) < j1^(2/3)+j2^(2/3)", "021", "2", pq21, (2, 1), (1.0, 2.0, 3.0), "2")
    pq12 = lambda p, q: p >= 1 and q >= 2
    add(2, (0, 1, 2), "j2=j3 < j1/(2*sqrt(2)), j1/j2 = B*", "012", "6", pq12, (1, 2), (bs, 1.0, 1.0), "3")
    add(2, (0, 1, 2), "j2=j3 < j1/(2*sqrt(2)), j1/j2 != B*", "012", "6", pq12, (1, 2), (8.0, 1.0, 1.0), "4")
    add(2, (0, 1, 2), "j2=j3 = j1/(2*sqrt(2))", "012", "4", pq12, (1, 2), (s8, 1.0, 1.0), "2")
    add(2, (0, 1, 2), "j2=j3 > j1/(2*sqrt(2))", "012", "2", pq12, (1, 2), (2.0, 1.0, 1.0), "2")
    add(2, (0, 1, 2), "j2!=j3, j1^(2/3) > j2^(2/3)+j3^(2/3)", "012", "6", pq12, (1, 2), (14.0, 2.0, 1.0))
    add(2, (0, 1, 2), "j2!=j3, j1^(2/3) = j2^(2/3)+j3^(2/3)", "012", "4", pq12, (1, 2), (bd21, 2.0, 1.0), "4")
    add(2, (0, 1, 2), "j2!=j3, j1^(2/3) < j2^(2/3)+j3^(2/3)", "012", "2", pq12, (1, 2), (3.0, 2.0, 1.0), "2")

    # --- Table 3: d_J = 0, rank < 3 ---
    any_pq = lambda p, q: True
    add(3, (0, 2, 0), "", "020", "1", pq21, (2, 1), (2.0, 1.0), "1")
    add(3, (0, 0, 2), "", "002", "1", pq12, (1, 2), (2.0, 1.0), "1")
    add(3, (0, 1, 1), "", "011-base", "1", any_pq, (1, 1), (2.0, 1.0), "1")
    add(3, (0, 1, 1), "j1=j2", "011-extra-eq", "1", lambda p, q: p >= 2 and q >= 2, (2, 2), (2.0, 2.0), "1")
    add(3, (0, 1, 1), "j2>j1", "011-extra-p", "4", pq21, (2, 1), (1.0, 3.0), "2")
    add(3, (0, 1, 1), "j1>j2", "011-extra-q", "4", pq12, (1, 2), (3.0, 1.0), "2")
    add(3, (0, 1, 0), "", "010-empty", "0", lambda p, q: q == 1, (1, 1), (2.0,))
    add(3, (0, 1, 0), "", "010-quad", "4", pq12, (1, 2), (2.0,), "1")
    add(3, (0, 0, 1), "", "001-empty", "0", lambda p, q: p == 1, (1, 1), (2.0,))
    add(3, (0, 0, 1), "", "001-quad", "4", pq21, (2, 1), (2.0,), "1")
    add(3, (0, 0, 0), "", "000-zero", "1", any_pq, (1, 1), ())
    add(3, (0, 0, 0), "", "000-fam-x", "inf", any_pq, (1, 1), ())
    add(3, (0, 0, 0), "", "000-fam-y", "inf", any_pq, (1, 1), ())
    add(3, (0, 0, 0), "", "000-d1", "1", any_pq, (1, 1), ())
    add(3, (0, 0, 0), "", "000-d2", "1", lambda p, q: p >= 2 and q >= 2, (2, 2), ())
    add(3, (0, 0, 0), "", "000-d3", "1", lambda p, q: p >= 3 and q >= 3, (3, 3), ())

    # --- Table 4: d_J != 0 ---
    add(4, (1, 2, 0), "", "120", "1", lambda p, q: p >= 3, (3, 1), (2.0, 1.0), "1")
    add(4, (1, 0, 2), "", "102", "1", lambda p, q: q >= 3, (1, 3), (2.0, 1.0), "1")
    add(4, (1, 1, 1), "j1=j2", "111-empty", "0", lambda p, q: p >= 2 and q >= 2, (2, 2), (2.0, 2.0))
    add(4, (1, 1, 1), "j1!=j2", "111-one", "1", lambda p, q: p >= 2 and q >= 2, (2, 2), (2.0, 1.0), "1")
    add(4, (1, 1, 0), "", "110", "0", pq21, (2, 1), (2.0,))
    add(4, (1, 0, 1), "", "101", "0", pq12, (1, 2), (2.0,))
    add(4, (1, 0, 0), "", "100-empty", "0", lambda p, q: p == 1 and q == 1, (1, 1), ())
    add(4, (1, 0, 0), "", "100-fam-p", "inf", lambda p, q: p >= 2, (2, 1), ())
    add(4, (1, 0, 0), "", "100-fam-q", "inf", lambda p, q: q >= 2, (1, 2), ())
    add(4, (2, 1, 0), "", "210", "0", lambda p, q: p >= 3 and q >= 2, (3, 2), (2.0,))
    add(4, (2, 0, 1), "", "201", "0", lambda p, q: p >= 2 and q >= 3, (2, 3), (2.0,))
    add(4, (2, 0, 0), "", "200-empty", "0", lambda p, q: p == 2 and q == 2, (2, 2), ())
    add(4, (2, 0, 0), "", "200-fam-p", "inf", lambda p, q: p >= 3 and q >= 2, (3, 2), ())
    add(4, (2, 0, 0), "", "200-fam-q", "inf", lambda p, q: p >= 2 and q >= 3, (2, 3), ())
    add(4, (3, 0, 0), "", "300", "0", lambda p, q: p >= 3 and q >= 3, (3, 3), ())
    return rows


ROWS: list[Row] = _rows()
