"""
Weighted fundamental Lagrange bases psi^w, psi^rho and the interpolation
operators L_m^w, L_m^rho written in them.

For nodes z_i of p_m (Christoffel numbers lam_i) and a per-node divisor d_i,

    psi_i(x) = lam_i * sum_{j<m} p_j(z_i) p_j(x) / d_i,

so that psi_i(z_k) = delta_ik / d_i and L_m(G, x) = sum_i psi_i(x) d_i G(z_i).
The w basis lives on the zeros x_i of p_m^w with d_i = (u phi)(x_i); the rho
basis lives on the zeros t_i of p_m^rho with d_i = (u rho)(t_i).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Union

import numpy as np

from prandtl.errors import DomainError
from prandtl.quadrature.jacobi import (
    GaussRule,
    JacobiExponents,
    OrthoSystem,
    cached_rule,
    cached_system,
    eval_all,
    weight_value,
)

ArrayLike = Union[float, np.ndarray]


class BasisKind(str, Enum):
    W = "w"
    RHO = "rho"


class ValidationMode(str, Enum):
    METHOD1 = "method1"
    METHOD2 = "method2"
    INTERPOLATION = "interpolation"
    CHRISTOFFEL = "christoffel"


def rho_exponents(alpha: float) -> JacobiExponents:
    return JacobiExponents(alpha, 1.0 - alpha)


def w_exponents(alpha: float) -> JacobiExponents:
    return JacobiExponents(1.0 - alpha, alpha)


PHI = JacobiExponents(0.5, 0.5)


@dataclass(frozen=True, eq=False)
class PsiBasis:
    kind: BasisKind
    rule: GaussRule
    system: OrthoSystem
    u_exponents: JacobiExponents
    modulation: np.ndarray
    table: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.rule.m

    @property
    def nodes(self) -> np.ndarray:
        return self.rule.nodes

    def psi_matrix(self, x: ArrayLike) -> np.ndarray:
        """Psi[l, i] = psi_i(x_l)."""
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(np.abs(xs) > 1.0):
            raise DomainError(f"basis evaluated outside [-1, 1]: {x!r}")
        values = eval_all(self.system, self.m - 1, xs)
        psi = (values @ self.table.T) * (self.rule.christoffel / self.modulation)
        # exact hits on a node take the cardinal value
        hit_rows, hit_cols = np.nonzero(xs[:, None] == self.nodes[None, :])
        if hit_rows.size:
            psi[hit_rows, :] = 0.0
            psi[hit_rows, hit_cols] = 1.0 / self.modulation[hit_cols]
        return psi

    def coefficients(self, samples: np.ndarray) -> np.ndarray:
        """Basis coefficients d_i G(z_i) of L_m(G)."""
        samples = np.asarray(samples, dtype=float)
        if samples.shape != (self.m,):
            raise DomainError(f"expected {self.m} samples, got shape {samples.shape}")
        return self.modulation * samples


def _build_basis(kind: BasisKind, weight: JacobiExponents, modulation_weight: JacobiExponents,
                 u: JacobiExponents, m: int) -> PsiBasis:
    system = cached_system(weight.alpha, weight.beta, m)
    rule = cached_rule(weight.alpha, weight.beta, m)
    modulation = np.asarray(weight_value(modulation_weight, rule.nodes), dtype=float)
    if np.any(modulation <= 0.0):
        raise DomainError("basis divisor vanished at an interior node")
    table = eval_all(system, m - 1, rule.nodes)
    modulation.setflags(write=False)
    table.setflags(write=False)
    return PsiBasis(kind=kind, rule=rule, system=system, u_exponents=u,
                    modulation=modulation, table=table)


def w_basis(alpha: float, gamma: float, delta: float, m: int) -> PsiBasis:
    """psi^w on the zeros of p_m^w, w = v^{1-alpha,alpha}, divisor (u phi)(x_i)."""
    u = JacobiExponents(gamma, delta)
    return _build_basis(BasisKind.W, w_exponents(alpha),
                        JacobiExponents(gamma + 0.5, delta + 0.5), u, m)


def rho_basis(alpha: float, gamma: float, delta: float, m: int) -> PsiBasis:
    """psi^rho on the zeros of p_m^rho, rho = v^{alpha,1-alpha}, divisor (u rho)(t_i)."""
    u = JacobiExponents(gamma, delta)
    return _build_basis(BasisKind.RHO, rho_exponents(alpha),
                        JacobiExponents(gamma + alpha, delta + 1.0 - alpha), u, m)


def psi_eval(basis: PsiBasis, i: int, x: ArrayLike) -> ArrayLike:
    """psi_i(x) for the 0-based node index i."""
    if not 0 <= i < basis.m:
        raise DomainError(f"node index {i} outside 0..{basis.m - 1}")
    out = basis.psi_matrix(x)[:, i]
    if np.ndim(x) == 0:
        return float(out[0])
    return out


def _interpolate(basis: PsiBasis, samples: np.ndarray, x: ArrayLike) -> ArrayLike:
    out = basis.psi_matrix(x) @ basis.coefficients(samples)
    if np.ndim(x) == 0:
        return float(out[0])
    return out


def interpolate_w(basis: PsiBasis, samples: np.ndarray, x: ArrayLike) -> ArrayLike:
    """L_m^w(G, x) from the samples G(x_i)."""
    if basis.kind is not BasisKind.W:
        raise DomainError("interpolate_w needs a w basis")
    return _interpolate(basis, samples, x)


def interpolate_rho(basis: PsiBasis, samples: np.ndarray, x: ArrayLike) -> ArrayLike:
    """L_m^rho(G, x) from the samples G(t_i)."""
    if basis.kind is not BasisKind.RHO:
        raise DomainError("interpolate_rho needs a rho basis")
    return _interpolate(basis, samples, x)


@dataclass(frozen=True)
class ExponentReport:
    mode: ValidationMode
    alpha: float
    gamma: float
    delta: float
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_range(name: str, value: float, lower: float, upper: float, out: List[str]) -> None:
    if value < lower:
        out.append(f"{name}={value:g} < {lower:g}")
    if value >= upper:
        out.append(f"{name}={value:g} >= {upper:g}")


def validate_exponents(alpha: float, gamma: float, delta: float,
                       mode: Union[ValidationMode, str] = ValidationMode.METHOD1) -> ExponentReport:
    """Check the (gamma, delta) range required by a solver method or a Lagrange process."""
    mode = ValidationMode(mode)
    violations: List[str] = []
    if not 0.0 < alpha < 1.0:
        violations.append(f"alpha={alpha:g} outside (0, 1)")
        return ExponentReport(mode, alpha, gamma, delta, tuple(violations))
    if mode is ValidationMode.METHOD1:
        _check_range("gamma", gamma, max(0.0, -alpha / 2 + 0.25), -alpha / 2 + 0.5, violations)
        _check_range("delta", delta, max(0.0, alpha / 2 - 0.25), alpha / 2, violations)
    elif mode is ValidationMode.METHOD2:
        if alpha != 0.5:
            violations.append(f"alpha={alpha:g} but method2 needs alpha=0.5")
        _check_range("gamma", gamma, 0.0, 0.25, violations)
        _check_range("delta", delta, 0.0, 0.25, violations)
    elif mode is ValidationMode.INTERPOLATION:
        _check_range("gamma", gamma, -alpha / 2 + 0.25, -alpha / 2 + 1.25, violations)
        _check_range("delta", delta, alpha / 2 - 0.25, alpha / 2 + 0.75, violations)
    else:
        _check_range("gamma", gamma, 0.0, -alpha / 2 + 0.75, violations)
        _check_range("delta", delta, 0.0, alpha / 2 + 0.25, violations)
    return ExponentReport(mode, alpha, gamma, delta, tuple(violations))
