"""
Inner matrices of the kernel operators at the collocation points.

    k_block[i, k] = k(t_k, x_i) / pi
    h_block[i, k] = sum_j p_j^rho(t_k) c_j(x_i) / pi

The Christoffel numbers and basis divisors are applied by the assembler.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from prandtl.errors import DomainError
from prandtl.funcdsl import Expr, evaluate, parse, pretty
from prandtl.kernels.moments import MomentTable
from prandtl.quadrature.jacobi import GaussRule, OrthoSystem, eval_all


@dataclass(frozen=True)
class SmoothKernel:
    """k(x, y); expr None is the constant-zero kernel."""

    expr: Optional[Expr] = None

    @classmethod
    def from_text(cls, text: Optional[str]) -> "SmoothKernel":
        return cls(parse(text) if text else None)

    @property
    def is_zero(self) -> bool:
        return self.expr is None

    def evaluate(self, x, y):
        if self.expr is None:
            return np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape)
        return evaluate(self.expr, x, y)

    def __str__(self) -> str:
        return "0" if self.expr is None else pretty(self.expr)


def _check_rule(sys_rho: OrthoSystem, rule_rho: GaussRule) -> None:
    if sys_rho.exponents != rule_rho.exponents:
        raise DomainError(f"rule for {rule_rho.exponents} used with system for {sys_rho.exponents}")
    if sys_rho.n_max < rule_rho.m - 1:
        raise DomainError(f"system degree {sys_rho.n_max} too low for {rule_rho.m} nodes")


def k_block(sys_rho: OrthoSystem, rule_rho: GaussRule, k: SmoothKernel,
            x_points: Sequence[float]) -> np.ndarray:
    _check_rule(sys_rho, rule_rho)
    xs = np.asarray(x_points, dtype=float)
    if k.is_zero:
        return np.zeros((xs.size, rule_rho.m))
    values = np.asarray(k.evaluate(rule_rho.nodes[None, :], xs[:, None]), dtype=float)
    values = np.broadcast_to(values, (xs.size, rule_rho.m))
    if not np.all(np.isfinite(values)):
        raise DomainError(f"smooth kernel {k} is not finite at the nodes")
    return values / math.pi


def h_block(moments: Optional[MomentTable], sys_rho: OrthoSystem, rule_rho: GaussRule,
            rows: Optional[int] = None) -> np.ndarray:
    _check_rule(sys_rho, rule_rho)
    if moments is None:
        return np.zeros((rows if rows is not None else rule_rho.m, rule_rho.m))
    if moments.m != rule_rho.m:
        raise DomainError(f"moment table has {moments.m} degrees, rule has {rule_rho.m} nodes")
    if rows is not None and len(moments) != rows:
        raise DomainError(f"moment table covers {len(moments)} points, expected {rows}")
    v = eval_all(sys_rho, rule_rho.m - 1, rule_rho.nodes)
    return (moments.values @ v.T) / math.pi
