"""
End-to-end solve: assemble, factor, and evaluate zeta_m = rho f_m.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from prandtl.errors import DomainError
from prandtl.kernels.moments import MomentOptions
from prandtl.models.problem import ProblemSpec
from prandtl.quadrature.jacobi import weight_value
from prandtl.quadrature.lagrange import PsiBasis
from prandtl.solver.assembler import DiscreteSystem, assemble
from prandtl.utils.linalg import cond_inf, lu_solve, residual_inf

logger = logging.getLogger(__name__)

RESIDUAL_FACTOR = 1e-10

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True, eq=False)
class ApproxSolution:
    """f_m(y) = sum_k psi_k(y) a_k on the rho basis."""

    m: int
    method: str
    coefficients: np.ndarray
    basis: PsiBasis
    spec: ProblemSpec
    residual: float
    rhs_norm: float
    cond: Optional[float] = None

    def f(self, y: ArrayLike) -> ArrayLike:
        out = self.basis.psi_matrix(y) @ self.coefficients
        return float(out[0]) if np.ndim(y) == 0 else out


def solve_system(system: DiscreteSystem, spec: ProblemSpec, with_cond: bool = True,
                 refine: bool = False, residual_factor: float = RESIDUAL_FACTOR) -> ApproxSolution:
    coefficients = lu_solve(system.matrix, system.rhs, refine=refine)
    coefficients.setflags(write=False)
    residual = residual_inf(system.matrix, coefficients, system.rhs)
    rhs_norm = float(np.max(np.abs(system.rhs))) if system.rhs.size else 0.0
    if residual > residual_factor * max(rhs_norm, np.finfo(float).tiny):
        logger.warning("'%s' m=%d: residual %.3e exceeds %.0e * |b| = %.3e",
                       spec.label, system.m, residual, residual_factor, residual_factor * rhs_norm)
    cond = cond_inf(system.matrix) if with_cond else None
    return ApproxSolution(m=system.m, method=system.method, coefficients=coefficients,
                          basis=system.t_basis, spec=spec, residual=residual,
                          rhs_norm=rhs_norm, cond=cond)


def solve(p: ProblemSpec, m: int, moment_options: Optional[MomentOptions] = None,
          with_cond: bool = True, refine: bool = False,
          residual_factor: float = RESIDUAL_FACTOR) -> ApproxSolution:
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    system = assemble(p, m, moment_options)
    solution = solve_system(system, p, with_cond=with_cond, refine=refine,
                            residual_factor=residual_factor)
    logger.info("solved '%s' (%s) m=%d residual=%.3e cond=%s", p.label, system.method, m,
                solution.residual, "n/a" if solution.cond is None else f"{solution.cond:.4e}")
    return solution


def evaluate_zeta(s: ApproxSolution, y: ArrayLike) -> ArrayLike:
    """zeta_m(y) = rho(y) f_m(y); exactly 0 at y = +-1."""
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(np.abs(ys) > 1.0):
        raise DomainError(f"zeta evaluated outside [-1, 1]: {y!r}")
    rho = np.asarray(weight_value(s.spec.rho, ys), dtype=float)
    out = rho * (s.basis.psi_matrix(ys) @ s.coefficients)
    out[np.abs(ys) == 1.0] = 0.0
    if np.ndim(y) == 0:
        return float(out[0])
    return out
