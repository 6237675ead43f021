"""
Collocation systems for the two quadrature methods.

Unknowns are a_k = (u rho f_m)(t_k) at the zeros t_k of p_m^rho; equations are
collocated at the zeros x_i of p_m^w and scaled by (u phi)(x_i):

    A[i, k] = (u phi)(x_i) * ( sum_j p_j^rho(t_k) ((j+1) p_j^w(x_i) + c_j(x_i)/pi)
                               + k(t_k, x_i)/pi ) * lam_k / (u rho)(t_k)
    b[i]    = (u phi)(x_i) g(x_i)

The sigma method (alpha = 1/2, rho = w = phi) adds diag((sigma phi)(x_i)).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from prandtl.errors import ConfigurationError, DomainError
from prandtl.kernels.blocks import h_block, k_block
from prandtl.kernels.moments import MomentOptions, MomentTable, modified_moments
from prandtl.models.problem import ProblemSpec
from prandtl.quadrature.lagrange import PsiBasis, ValidationMode, rho_basis, validate_exponents, w_basis

logger = logging.getLogger(__name__)

METHOD1 = "method1"
METHOD2 = "method2"


@dataclass(frozen=True, eq=False)
class DiscreteSystem:
    m: int
    matrix: np.ndarray
    rhs: np.ndarray
    method: str
    x_basis: PsiBasis  # collocation side, zeros of p_m^w
    t_basis: PsiBasis  # unknowns side, zeros of p_m^rho
    alpha: float
    gamma: float
    delta: float

    @property
    def collocation_points(self) -> np.ndarray:
        return self.x_basis.nodes

    @property
    def quadrature_nodes(self) -> np.ndarray:
        return self.t_basis.nodes


def _require_valid(p: ProblemSpec, mode: ValidationMode) -> None:
    report = validate_exponents(p.alpha, p.gamma, p.delta, mode)
    if not report.ok:
        raise ConfigurationError(f"exponents of '{p.label}' fail {mode.value}", report.violations)


def _dominant_and_kernels(p: ProblemSpec, m: int, x_basis: PsiBasis, t_basis: PsiBasis,
                          moment_options: Optional[MomentOptions]) -> np.ndarray:
    xs = x_basis.nodes
    degree_factor = np.arange(1, m + 1, dtype=float)
    inner = (x_basis.table * degree_factor) @ t_basis.table.T
    weak = p.weak_kernel()
    if weak is not None:
        moments: MomentTable = modified_moments(t_basis.system, weak, xs, m, moment_options)
        inner = inner + h_block(moments, t_basis.system, t_basis.rule, rows=m)
    smooth = p.smooth_kernel()
    if not smooth.is_zero:
        inner = inner + k_block(t_basis.system, t_basis.rule, smooth, xs)
    return inner


def _finish(p: ProblemSpec, m: int, matrix: np.ndarray, x_basis: PsiBasis, t_basis: PsiBasis,
            method: str) -> DiscreteSystem:
    rhs = x_basis.modulation * np.atleast_1d(p.rhs(x_basis.nodes))
    if not (np.all(np.isfinite(matrix)) and np.all(np.isfinite(rhs))):
        raise DomainError(f"non-finite entries assembling '{p.label}' at m={m}")
    matrix.setflags(write=False)
    rhs.setflags(write=False)
    logger.debug("assembled %s for '%s' at m=%d", method, p.label, m)
    return DiscreteSystem(m=m, matrix=matrix, rhs=rhs, method=method, x_basis=x_basis,
                          t_basis=t_basis, alpha=p.alpha, gamma=p.gamma, delta=p.delta)


def assemble_method1(p: ProblemSpec, m: int, moment_options: Optional[MomentOptions] = None) -> DiscreteSystem:
    if p.has_sigma:
        raise ConfigurationError(f"'{p.label}' has a sigma term; use the sigma method")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    _require_valid(p, ValidationMode.METHOD1)
    x_basis = w_basis(p.alpha, p.gamma, p.delta, m)
    t_basis = rho_basis(p.alpha, p.gamma, p.delta, m)
    inner = _dominant_and_kernels(p, m, x_basis, t_basis, moment_options)
    matrix = x_basis.modulation[:, None] * inner * (t_basis.rule.christoffel / t_basis.modulation)[None, :]
    return _finish(p, m, matrix, x_basis, t_basis, METHOD1)


def assemble_method2(p: ProblemSpec, m: int, moment_options: Optional[MomentOptions] = None) -> DiscreteSystem:
    if not p.has_sigma:
        raise ConfigurationError(f"'{p.label}' has no sigma term; use method1")
    if p.alpha != 0.5:
        raise ConfigurationError(f"sigma requires alpha = 0.5, got alpha = {p.alpha}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    _require_valid(p, ValidationMode.METHOD2)
    x_basis = w_basis(p.alpha, p.gamma, p.delta, m)
    t_basis = rho_basis(p.alpha, p.gamma, p.delta, m)
    inner = _dominant_and_kernels(p, m, x_basis, t_basis, moment_options)
    matrix = x_basis.modulation[:, None] * inner * (t_basis.rule.christoffel / t_basis.modulation)[None, :]
    gamma_diag = np.atleast_1d(p.sigma_phi_values(x_basis.nodes))
    matrix = matrix + np.diag(gamma_diag)
    return _finish(p, m, matrix, x_basis, t_basis, METHOD2)


def assemble(p: ProblemSpec, m: int, moment_options: Optional[MomentOptions] = None) -> DiscreteSystem:
    if p.has_sigma:
        return assemble_method2(p, m, moment_options)
    return assemble_method1(p, m, moment_options)


def dominant_image(system: DiscreteSystem, n: int) -> np.ndarray:
    """A applied to the coefficients of p_n^rho, i.e. a_k = (u rho p_n^rho)(t_k)."""
    if not 0 <= n < system.m:
        raise DomainError(f"degree {n} outside 0..{system.m - 1}")
    coeffs = system.t_basis.coefficients(system.t_basis.table[:, n])
    return system.matrix @ coeffs


def expected_dominant_image(system: DiscreteSystem, n: int) -> np.ndarray:
    """(n+1) (u phi p_n^w)(x_i)."""
    return (n + 1) * system.x_basis.modulation * system.x_basis.table[:, n]
