"""Exact solutions of the reduced algebraic systems.

Three systems show up once the full problem is brought to canonical form,
all with nonnegative right-hand sides (callers absorb signs):

  pair          b1*b2^2 = j1,  b2*b1^2 = j2
  euclid triple b1*(b2^2 + b3^2) = j1,  b2*(b1^2 + b3^2) = j2,  b3*(b1^2 + b2^2) = j3
  hyper triple  b1*(b2^2 - b3^2) = j1,  b2*(b1^2 - b3^2) = j2,  b3*(b1^2 + b2^2) = j3

Isolated solutions come with closed-form branch data (a branch tag, a pairing
id and the conserved quantity K shared by a solution pair); degenerate inputs
yield one-parameter families along coordinate axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEG_TOL = 1e-9  # relative tolerance for degeneracy predicates
NEAR_DEG_TOL = 1e-6  # proximity at which a near-degenerate warning is raised

__all__ = [
    "CubicError",
    "TripleSolution",
    "SolutionFamily",
    "SolutionSet",
    "solve_cubic_real",
    "solve_pair",
    "solve_euclid_triple",
    "solve_hyper_triple",
    "conserved_K",
    "cbrt",
]


class CubicError(Exception):
    pass


def cbrt(x: float) -> float:
    """Real cube root with sign."""
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


@dataclass(frozen=True)
class TripleSolution:
    """One isolated solution (b1, b2, b3) of a reduced triple system."""

    b: tuple[float, float, float]
    branch: str  # e.g. "b+", "c+/-", "d-2", "sym", "pair"
    pair_id: int | None = None  # solutions sharing a pair_id form a conserved pair
    K: float | None = None  # (b1*b2*b3)^(2/3) when all components are nonzero

    def as_array(self) -> np.ndarray:
        return np.array(self.b, dtype=float)


@dataclass(frozen=True)
class SolutionFamily:
    """One-parameter family: the free component ranges over ``domain``."""

    free_index: int  # which of b1, b2, b3 (0-based) is free
    domain: str = "R"  # "R" or "R\\{0}"

    def member(self, t: float) -> tuple[float, float, float]:
        b = [0.0, 0.0, 0.0]
        b[self.free_index] = float(t)
        return tuple(b)


@dataclass
class SolutionSet:
    """Isolated solutions plus zero or more one-parameter families."""

    solutions: list[TripleSolution] = field(default_factory=list)
    families: list[SolutionFamily] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    subcase: str = ""


def _check_nonnegative(js):
    for j in js:
        if j < 0.0:
            raise CubicError(f"right-hand sides must be nonnegative, got {js}")


def solve_cubic_real(c3: float, c2: float, c1: float, c0: float) -> list[float]:
    """All real roots of c3*t^3 + c2*t^2 + c1*t + c0, each polished by Newton.

    Degree is lowered explicitly when c3 == 0. Roots closer than 1e-10
    (relative) are collapsed to one representative.
    """
    if c3 == 0.0:
        if c2 == 0.0:
            if c1 == 0.0:
                raise CubicError("all coefficients are zero (or degree < 1)")
            return [-c0 / c1]
        disc = c1 * c1 - 4.0 * c2 * c0
        if disc < 0.0:
            return []
        s = math.sqrt(disc)
        return sorted({(-c1 - s) / (2.0 * c2), (-c1 + s) / (2.0 * c2)})

    b, c, d = c2 / c3, c1 / c3, c0 / c3
    # depressed form t = u - b/3:  u^3 + p*u + q
    p = c - b * b / 3.0
    q = d - b * c / 3.0 + 2.0 * b**3 / 27.0
    shift = b / 3.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    roots: list[float]
    if disc > 0.0:
        # one real root, Cardano branch
        s = math.sqrt(disc)
        roots = [cbrt(-q / 2.0 + s) + cbrt(-q / 2.0 - s) - shift]
    elif p == 0.0 and q == 0.0:
        roots = [-shift]
    else:
        # three real roots (disc <= 0 requires p < 0), trigonometric branch
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg) / 3.0
        roots = [m * math.cos(phi - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]

    # one Newton polish step per root
    def f(t):
        return ((c3 * t + c2) * t + c1) * t + c0

    def fp(t):
        return (3.0 * c3 * t + 2.0 * c2) * t + c1

    polished = []
    for t in roots:
        dft = fp(t)
        if dft != 0.0:
            t = t - f(t) / dft
        polished.append(t)

    polished.sort()
    scale = max(1.0, max(abs(t) for t in polished))
    out: list[float] = []
    for t in polished:
        if not out or abs(t - out[-1]) > 1e-10 * scale:
            out.append(t)
    return out


def solve_pair(j1: float, j2: float) -> SolutionSet:
    """General solution of b1*b2^2 = j1, b2*b1^2 = j2 for j1, j2 >= 0."""
    _check_nonnegative((j1, j2))
    out = SolutionSet()
    if j1 == 0.0 and j2 == 0.0:
        out.subcase = "both zero"
        out.families = [SolutionFamily(free_index=0), SolutionFamily(free_index=1)]
        return out
    if j1 == 0.0 or j2 == 0.0:
        out.subcase = "one zero"
        return out
    out.subcase = "both nonzero"
    b1 = cbrt(j2 * j2 / j1)
    b2 = cbrt(j1 * j1 / j2)
    out.solutions = [TripleSolution(b=(b1, b2, 0.0), branch="pair", pair_id=0)]
    return out


def _two_equal_pattern(j1, j2, j3, tol):
    """Return (i, j, k) with j_i == j_j != j_k if exactly two inputs coincide."""
    js = (j1, j2, j3)
    scale = max(js)
    for (i, j, k) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        if abs(js[i] - js[j]) <= tol * scale and abs(js[i] - js[k]) > tol * scale:
            return i, j, k
    return None


def _near_flags(pairs, scale, warnings):
    for name, a, b in pairs:
        gap = abs(a - b)
        if DEG_TOL * scale < gap <= NEAR_DEG_TOL * scale:
            warnings.append(f"near-degenerate: {name} within {gap / max(scale, 1e-300):.2e} relative")


def solve_euclid_triple(j1: float, j2: float, j3: float) -> SolutionSet:
    """General solution of the all-plus triple system for j1, j2, j3 >= 0."""
    _check_nonnegative((j1, j2, j3))
    out = SolutionSet()
    js = (j1, j2, j3)
    scale = max(js)
    nz = [k for k, j in enumerate(js) if j > 0.0]

    if len(nz) == 0:
        out.subcase = "all zero"
        out.families = [SolutionFamily(free_index=k) for k in range(3)]
        return out
    if len(nz) == 1:
        out.subcase = "one nonzero"
        return out
    if len(nz) == 2:
        out.subcase = "one zero"
        (i, j), (k,) = nz, [m for m in range(3) if m not in nz]
        pair = solve_pair(js[i], js[j])
        b = [0.0, 0.0, 0.0]
        b[i], b[j] = pair.solutions[0].b[0], pair.solutions[0].b[1]
        out.solutions = [TripleSolution(b=tuple(b), branch="pair", pair_id=0)]
        return out

    _near_flags(
        [("j1=j2", j1, j2), ("j1=j3", j1, j3), ("j2=j3", j2, j3)], scale, out.warnings
    )
    if abs(j1 - j2) <= DEG_TOL * scale and abs(j2 - j3) <= DEG_TOL * scale:
        out.subcase = "all equal"
        v = cbrt(j1 / 2.0)
        out.solutions = [TripleSolution(b=(v, v, v), branch="sym", pair_id=0, K=v * v)]
        return out

    pat = _two_equal_pattern(j1, j2, j3, DEG_TOL)
    if pat is not None:
        i, j, k = pat
        je, jd = js[i], js[k]  # je: the two equal values, jd: the distinct one
        if je > jd:
            # equal pair dominates: b_i = b_j, b_k = z * b_i
            out.subcase = "two equal, larger"
            K = (jd / 2.0) ** (2.0 / 3.0)
            sols = []
            for sgn, tag in ((+1.0, "b+"), (-1.0, "b-")):
                z = (je + sgn * math.sqrt(je * je - jd * jd)) / jd
                b_eq = cbrt(jd / (2.0 * z))
                b = [0.0, 0.0, 0.0]
                b[i] = b[j] = b_eq
                b[k] = z * b_eq
                sols.append(TripleSolution(b=tuple(b), branch=tag, pair_id=0, K=K))
            out.solutions = sols
            return out
        # distinct value dominates: b_k fixed, b_i = b_k / w, b_j = w * b_k
        out.subcase = "two equal, smaller"
        s = (jd + math.sqrt(jd * jd + 8.0 * je * je)) / (2.0 * je)
        bk = cbrt(je / s)
        K = (je / s) ** (2.0 / 3.0)
        sols = []
        for sgn, tag in ((+1.0, "b+"), (-1.0, "b-")):
            w = (s + sgn * math.sqrt(s * s - 4.0)) / 2.0
            b = [0.0, 0.0, 0.0]
            b[i] = bk / w
            b[j] = w * bk
            b[k] = bk
            sols.append(TripleSolution(b=tuple(b), branch=tag, pair_id=0, K=K))
        out.solutions = sols
        return out

    # all different and positive: one admissible root t0 of the resolvent,
    # always above j2/j1 + j1/j2
    out.subcase = "all different"
    roots = solve_cubic_real(j1 * j2, -(j1 * j1 + j2 * j2 + j3 * j3), 0.0, 4.0 * j3 * j3)
    t0 = max(roots)
    if t0 <= 2.0:
        raise CubicError(f"no admissible resolvent root for j = {js}")
    K = (j3 / t0) ** (2.0 / 3.0)
    sols = []
    for sgn, tag in ((+1.0, "b+"), (-1.0, "b-")):
        y = (t0 + sgn * math.sqrt(t0 * t0 - 4.0)) / 2.0
        z = math.sqrt(max(0.0, y * (j1 - j2 * y) / (j2 - j1 * y)))
        b1 = cbrt(j3 / (t0 * y * z))
        sols.append(TripleSolution(b=(b1, y * b1, z * b1), branch=tag, pair_id=0, K=K))
    out.solutions = sols
    return out


def _hyper_axis_case(j3: float) -> list[TripleSolution]:
    # j1 = j2 = 0, j3 != 0: four sign patterns (+-c, +-c, c)
    c = cbrt(j3 / 2.0)
    K = c * c
    return [
        TripleSolution(b=(c, c, c), branch="b+", pair_id=0, K=K),
        TripleSolution(b=(-c, -c, c), branch="b-", pair_id=0, K=K),
        TripleSolution(b=(-c, c, c), branch="c+", pair_id=1, K=K),
        TripleSolution(b=(c, -c, c), branch="c-", pair_id=1, K=K),
    ]


def _hyper_one_zero_first(j2: float, j3: float, warnings: list[str]) -> tuple[str, list[TripleSolution]]:
    # j1 = 0, j2 != 0, j3 != 0: one solution with b1 = 0, plus a quadruple iff j3 > j2
    sols = [
        TripleSolution(
            b=(0.0, -cbrt(j3 * j3 / j2), cbrt(j2 * j2 / j3)), branch="a0", pair_id=None
        )
    ]
    scale = max(j2, j3)
    gap = abs(j3 - j2)
    if gap <= DEG_TOL * scale:
        return "one zero, no quadruple", sols
    if gap <= NEAR_DEG_TOL * scale:
        warnings.append(
            f"near-degenerate: j3=j2 within {gap / scale:.2e} relative (quadruple boundary)"
        )
    if j3 < j2:
        return "one zero, no quadruple", sols
    K = cbrt((j3 * j3 - j2 * j2) / 4.0)
    c_lo = cbrt((j3 - j2) / 2.0)  # b3 = b2 branch
    c_hi = cbrt((j3 + j2) / 2.0)  # b3 = -b2 branch
    r_lo = math.sqrt((j3 + j2) / (2.0 * c_lo))
    r_hi = math.sqrt((j3 - j2) / (2.0 * c_hi))
    sols += [
        TripleSolution(b=(r_lo, c_lo, c_lo), branch="q1+", pair_id=2, K=K),
        TripleSolution(b=(-r_hi, -c_hi, c_hi), branch="q2-", pair_id=2, K=K),
        TripleSolution(b=(-r_lo, c_lo, c_lo), branch="q1-", pair_id=3, K=K),
        TripleSolution(b=(r_hi, -c_hi, c_hi), branch="q2+", pair_id=3, K=K),
    ]
    return "one zero, with quadruple", sols


def _hyper_equal_pair(j1: float, j3: float, warnings: list[str]) -> tuple[str, list[TripleSolution]]:
    # j1 = j2 > 0: two b-solutions always, plus 2 or 4 more when j3 >= 2*sqrt(2)*j1
    sols = []
    K_b = (j3 / 2.0) ** (2.0 / 3.0)
    for sgn, tag in ((+1.0, "b+"), (-1.0, "b-")):
        z = (-j1 + sgn * math.sqrt(j1 * j1 + j3 * j3)) / j3
        b_eq = cbrt(j3 / (2.0 * z))
        sols.append(TripleSolution(b=(b_eq, b_eq, z * b_eq), branch=tag, pair_id=0, K=K_b))

    thresh = 2.0 * math.sqrt(2.0) * j1
    scale = max(j1, j3)
    gap = abs(j3 - thresh)
    if DEG_TOL * scale < gap <= NEAR_DEG_TOL * scale:
        warnings.append(
            f"near-degenerate: j3 = 2*sqrt(2)*j1 within {gap / scale:.2e} relative"
        )
    if gap <= DEG_TOL * scale:
        # boundary: the two c-pairs coincide (s+ = s- = sqrt(2))
        s = math.sqrt(2.0)
        c3 = cbrt(j1 / s)
        K = (j1 / s) ** (2.0 / 3.0)
        for sgn, tag in ((+1.0, "c+"), (-1.0, "c-")):
            w = (s + sgn * math.sqrt(s * s + 4.0)) / 2.0
            sols.append(
                TripleSolution(b=(c3 / w, -w * c3, c3), branch=tag, pair_id=1, K=K)
            )
        return "equal pair, boundary", sols
    if j3 < thresh:
        return "equal pair, below", sols
    disc = math.sqrt(j3 * j3 - 8.0 * j1 * j1)
    for branch_sgn, btag, pid in ((+1.0, "+", 1), (-1.0, "-", 2)):
        s = (j3 + branch_sgn * disc) / (2.0 * j1)
        c3 = cbrt(j1 / s)
        K = (j1 / s) ** (2.0 / 3.0)
        for sgn, tag in ((+1.0, "+"), (-1.0, "-")):
            w = (s + sgn * math.sqrt(s * s + 4.0)) / 2.0
            sols.append(
                TripleSolution(
                    b=(c3 / w, -w * c3, c3), branch=f"c{btag}/{tag}", pair_id=pid, K=K
                )
            )
    return "equal pair, above", sols


def _hyper_generic(j1: float, j2: float, j3: float, warnings: list[str]) -> tuple[str, list[TripleSolution]]:
    # j1 != j2, all positive: admissible resolvent roots t with |t| >= 2
    A = j2 / j1
    lhs = j3 ** (2.0 / 3.0)
    rhs = j1 ** (2.0 / 3.0) + j2 ** (2.0 / 3.0)
    scale = max(lhs, rhs)
    gap = abs(lhs - rhs)
    if DEG_TOL * scale < gap <= NEAR_DEG_TOL * scale:
        warnings.append(
            f"near-degenerate: j3^(2/3) = j1^(2/3)+j2^(2/3) within {gap / scale:.2e} relative"
        )

    roots = solve_cubic_real(
        j1 * j2, j3 * j3 - j2 * j2 - j1 * j1, 0.0, -4.0 * j3 * j3
    )
    t_pos = [t for t in roots if t > 2.0]
    if len(t_pos) != 1:
        raise CubicError(f"expected exactly one resolvent root above 2, got {roots}")
    if gap <= DEG_TOL * scale:
        # double negative root, taken once
        ts = [t_pos[0], -2.0 * (cbrt(A) + cbrt(1.0 / A))]
        subcase = "generic, boundary"
    elif lhs > rhs:
        t_neg = sorted(t for t in roots if t < -2.0)
        if len(t_neg) != 2:
            raise CubicError(f"expected two resolvent roots below -2, got {roots}")
        ts = [t_pos[0]] + t_neg
        subcase = "generic, above"
    else:
        ts = [t_pos[0]]
        subcase = "generic, below"

    sols = []
    for k, t in enumerate(ts, start=1):
        K = cbrt((j3 / t) ** 2)
        for sgn, tag in ((+1.0, "+"), (-1.0, "-")):
            y = (t + sgn * math.sqrt(max(0.0, t * t - 4.0))) / 2.0
            lam = math.copysign(1.0, (y * (1.0 - y * y)) * (A - y))
            z = lam * math.sqrt(max(0.0, y * (j2 * y - j1) / (j2 - y * j1)))
            b1 = cbrt(j3 / (t * y * z))
            sols.append(
                TripleSolution(
                    b=(b1, y * b1, z * b1), branch=f"d{tag}{k}", pair_id=k - 1, K=K
                )
            )
    return subcase, sols


def solve_hyper_triple(j1: float, j2: float, j3: float) -> SolutionSet:
    """General solution of the mixed-sign triple system for j1, j2, j3 >= 0."""
    _check_nonnegative((j1, j2, j3))
    out = SolutionSet()
    js = (j1, j2, j3)
    nz = [k for k, j in enumerate(js) if j > 0.0]

    if len(nz) == 0:
        out.subcase = "all zero"
        out.families = [SolutionFamily(free_index=k) for k in range(3)]
        return out
    if nz == [2]:
        out.subcase = "axis"
        out.solutions = _hyper_axis_case(j3)
        return out
    if nz == [0] or nz == [1]:
        out.subcase = "one nonzero"
        return out
    if nz == [0, 1]:
        out.subcase = "third zero"
        pair = solve_pair(j1, j2)
        b1, b2, _ = pair.solutions[0].b
        out.solutions = [TripleSolution(b=(b1, b2, 0.0), branch="pair", pair_id=0)]
        return out
    if nz == [1, 2]:
        out.subcase, out.solutions = _hyper_one_zero_first(j2, j3, out.warnings)
        return out
    if nz == [0, 2]:
        # mirror of the previous case under the b1 <-> b2 swap symmetry
        sub, sols = _hyper_one_zero_first(j1, j3, out.warnings)
        out.subcase = sub
        out.solutions = [
            TripleSolution(
                b=(s.b[1], s.b[0], s.b[2]), branch=s.branch, pair_id=s.pair_id, K=s.K
            )
            for s in sols
        ]
        return out

    scale = max(js)
    gap = abs(j1 - j2)
    if DEG_TOL * scale < gap <= NEAR_DEG_TOL * scale:
        out.warnings.append(f"near-degenerate: j1=j2 within {gap / scale:.2e} relative")
    if gap <= DEG_TOL * scale:
        out.subcase, out.solutions = _hyper_equal_pair(j1, j3, out.warnings)
    else:
        out.subcase, out.solutions = _hyper_generic(j1, j2, j3, out.warnings)
    return out


def conserved_K(sol_a: TripleSolution, sol_b: TripleSolution, kind: str, tol: float = 1e-9) -> float:
    """Conserved quantity of a solution pair; asserts the component identities.

    For the all-plus system K = b1*b1' = b2*b2' = b3*b3'; for the mixed-sign
    system K = -b1*b1' = -b2*b2' = b3*b3'.
    """
    ba, bb = sol_a.b, sol_b.b
    if any(v == 0.0 for v in ba) or any(v == 0.0 for v in bb):
        raise CubicError("conserved quantity requires all six components nonzero")
    if kind == "euclid":
        prods = [ba[0] * bb[0], ba[1] * bb[1], ba[2] * bb[2]]
    elif kind == "hyper":
        prods = [-ba[0] * bb[0], -ba[1] * bb[1], ba[2] * bb[2]]
    else:
        raise CubicError(f"unknown system kind: {kind!r}")
    K = prods[0]
    scale = max(1.0, abs(K))
    if max(abs(p - K) for p in prods) > tol * scale:
        raise CubicError(f"component products disagree: {prods}")
    return K
