"""Constant solutions of the SU(2) Yang-Mills equations in pseudo-Euclidean space.

The package classifies an arbitrary constant current matrix by hyperbolic
singular value decomposition, enumerates every constant potential solving the
field equations (exact solutions and one-parameter families), and reports
strength components together with the invariant F^2. An independent
multi-start root-finding oracle certifies the enumeration.
"""

from .classify import (
    ClassKey,
    Potential,
    PotentialFamily,
    SolutionReport,
    Strength,
    class_of,
    enumerate_canonical,
    solve_all,
    strength_of,
    to_original_frame,
)
from .cubic import solve_cubic_real, solve_euclid_triple, solve_hyper_triple, solve_pair
from .hsvd import canonical_params, canonicalize_current, hsvd
from .linalg import Signature, is_pseudo_orthogonal, metric, sym_eigen
from .verify import cross_check, oracle_solve, residual

__all__ = [
    "Signature",
    "metric",
    "sym_eigen",
    "is_pseudo_orthogonal",
    "hsvd",
    "canonical_params",
    "canonicalize_current",
    "solve_cubic_real",
    "solve_pair",
    "solve_euclid_triple",
    "solve_hyper_triple",
    "residual",
    "oracle_solve",
    "cross_check",
    "ClassKey",
    "Potential",
    "PotentialFamily",
    "Strength",
    "SolutionReport",
    "class_of",
    "enumerate_canonical",
    "strength_of",
    "to_original_frame",
    "solve_all",
]

__version__ = "0.1.0"
