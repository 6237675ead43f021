"""
Base weak kernel: the four weakly singular kernels h(x, y) the solver can
integrate against p_j^rho exactly enough to build modified moments.
Each kernel is |x-y|^mu times optional factors log|x-y| and sgn(x-y).
"""

from abc import ABC
from typing import Union

import numpy as np

from prandtl.errors import ConfigurationError, DomainError

ArrayLike = Union[float, np.ndarray]


class WeakKernel(ABC):
    """h(x, y) = |x-y|^mu [log|x-y|] [sgn(x-y)], 0 at x = y by convention."""

    name: str = "base"
    has_log: bool = False
    odd: bool = False
    needs_mu: bool = True

    def __init__(self, config: dict):
        self.config = config or {}
        if self.needs_mu:
            if "mu" not in self.config or self.config["mu"] is None:
                raise ConfigurationError(f"weak kernel '{self.name}' needs mu")
            self.mu = float(self.config["mu"])
            if not -1.0 < self.mu < 0.0:
                raise ConfigurationError(f"weak kernel '{self.name}' needs mu in (-1, 0), got {self.mu}")
        else:
            self.mu = 0.0

    def side_sign(self, side: int) -> float:
        """Factor contributed on the side x - y = side * s, s > 0."""
        return float(side) if self.odd else 1.0

    def radial(self, s: np.ndarray) -> np.ndarray:
        """s^mu [log s] for s > 0."""
        out = np.power(s, self.mu) if self.mu else np.ones_like(s)
        if self.has_log:
            out = out * np.log(s)
        return out

    def evaluate(self, x: ArrayLike, y: ArrayLike) -> ArrayLike:
        xs = np.asarray(x, dtype=float)
        ys = np.asarray(y, dtype=float)
        diff = xs - ys
        s = np.abs(diff)
        if np.any(s == 0.0):
            raise DomainError(f"weak kernel '{self.name}' is singular at x = y")
        out = self.radial(s)
        if self.odd:
            out = out * np.sign(diff)
        if out.ndim == 0:
            return float(out)
        return out

    def describe(self) -> dict:
        return {"kind": self.name, "mu": self.mu if self.needs_mu else None}

    def __repr__(self) -> str:
        if self.needs_mu:
            return f"{type(self).__name__}(mu={self.mu:g})"
        return f"{type(self).__name__}()"
