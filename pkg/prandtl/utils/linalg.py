"""
Dense LU with partial pivoting (LAPACK getrf/getrs through scipy) and the
infinity-norm condition number from the explicit inverse.
"""

import math
import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor
from scipy.linalg import lu_solve as _lu_solve

from prandtl.errors import DomainError, SingularSystemError


def _square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    return a


def _factor(a: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.size and np.min(pivots) == 0.0:
        raise SingularSystemError(f"zero pivot in column {int(np.argmin(pivots))}")
    return lu, piv


def lu_solve(a: np.ndarray, b: np.ndarray, refine: bool = False) -> np.ndarray:
    """x with a @ x = b; one step of iterative refinement when refine is set."""
    a = _square(a)
    b = np.asarray(b, dtype=float)
    if b.shape[0] != a.shape[0]:
        raise DomainError(f"right-hand side of length {b.shape[0]} for a {a.shape[0]}x{a.shape[0]} matrix")
    factors = _factor(a)
    x = _lu_solve(factors, b)
    if refine:
        x = x + _lu_solve(factors, b - a @ x)
    return x


def cond_inf(a: np.ndarray) -> float:
    """||a||_inf * ||a^-1||_inf; inf for a singular matrix."""
    a = _square(a)
    try:
        factors = _factor(a)
    except SingularSystemError:
        return math.inf
    inverse = _lu_solve(factors, np.eye(a.shape[0]))
    if not np.all(np.isfinite(inverse)):
        return math.inf
    return float(np.linalg.norm(a, np.inf) * np.linalg.norm(inverse, np.inf))


def residual_inf(a: np.ndarray, x: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a @ x - b))) if np.size(b) else 0.0
