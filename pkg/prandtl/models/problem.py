"""
Problem instances of the Prandtl-type equation

    (M_{sigma phi} + D A^rho + K + H) f = g,   zeta = rho f,

validated with pydantic. Expressions are function mini-language strings and
are parsed during validation, so a ProblemSpec that exists is well formed.
"""

import json
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from prandtl.funcdsl import evaluate, parse, variables
from prandtl.kernels import WEAK_KERNELS, WeakKernel, get_weak_kernel
from prandtl.kernels.blocks import SmoothKernel
from prandtl.quadrature.jacobi import JacobiExponents, weight_value
from prandtl.quadrature.lagrange import PHI

WeakKind = Literal["abs_pow", "abs_pow_sgn", "log", "abs_pow_log"]


class WeakKernelConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: WeakKind
    mu: Optional[float] = None

    @model_validator(mode="after")
    def _mu_matches_kind(self):
        needs_mu = WEAK_KERNELS[self.kind].needs_mu
        if needs_mu and self.mu is None:
            raise ValueError(f"weak kernel '{self.kind}' needs mu")
        if needs_mu and not -1.0 < self.mu < 0.0:
            raise ValueError(f"mu must lie in (-1, 0), got {self.mu}")
        if not needs_mu and self.mu is not None:
            raise ValueError(f"weak kernel '{self.kind}' takes no mu")
        return self

    def build(self) -> WeakKernel:
        return get_weak_kernel(self.kind, {"mu": self.mu})


class ProblemSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str = "problem"
    alpha: float
    gamma: float = 0.0
    delta: float = 0.0
    sigma: Optional[str] = None
    sigma_phi: Optional[str] = None
    k: Optional[str] = None
    h: Optional[WeakKernelConfig] = None
    g: str
    m_ref: Optional[int] = None
    exact_zeta: Optional[str] = None

    @field_validator("k")
    @classmethod
    def _parses(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse(value)
        return value

    @field_validator("sigma", "sigma_phi", "g", "exact_zeta")
    @classmethod
    def _function_of_y(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and "x" in variables(parse(value)):
            raise ValueError(f"'{value}' must be a function of y only")
        return value

    @field_validator("alpha")
    @classmethod
    def _alpha_open_unit(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {value}")
        return value

    @field_validator("gamma", "delta")
    @classmethod
    def _non_negative(cls, value: float) -> float:
        if value < 0.0:
            raise ValueError(f"exponent must be >= 0, got {value}")
        return value

    @field_validator("m_ref")
    @classmethod
    def _m_ref_size(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 2:
            raise ValueError(f"m_ref must be >= 2, got {value}")
        return value

    @model_validator(mode="after")
    def _sigma_needs_half(self):
        if self.sigma is not None and self.sigma_phi is not None:
            raise ValueError("give either sigma or sigma_phi, not both")
        if self.has_sigma and self.alpha != 0.5:
            raise ValueError(f"sigma requires alpha = 0.5, got alpha = {self.alpha}")
        return self

    @property
    def has_sigma(self) -> bool:
        return self.sigma is not None or self.sigma_phi is not None

    @property
    def method(self) -> str:
        return "method2" if self.has_sigma else "method1"

    @property
    def u(self) -> JacobiExponents:
        return JacobiExponents(self.gamma, self.delta)

    @property
    def rho(self) -> JacobiExponents:
        return JacobiExponents(self.alpha, 1.0 - self.alpha)

    def smooth_kernel(self) -> SmoothKernel:
        return SmoothKernel.from_text(self.k)

    def weak_kernel(self) -> Optional[WeakKernel]:
        return self.h.build() if self.h is not None else None

    def rhs(self, y) -> np.ndarray:
        return np.asarray(evaluate(parse(self.g), 0.0, y), dtype=float)

    def sigma_phi_values(self, y) -> np.ndarray:
        """(sigma phi)(y); zero when the problem has no sigma term."""
        ys = np.asarray(y, dtype=float)
        if self.sigma_phi is not None:
            return np.asarray(evaluate(parse(self.sigma_phi), 0.0, ys), dtype=float) * np.ones_like(ys)
        if self.sigma is not None:
            values = np.asarray(evaluate(parse(self.sigma), 0.0, ys), dtype=float)
            return values * weight_value(PHI, ys)
        return np.zeros_like(ys)

    def exact(self, y) -> Optional[np.ndarray]:
        if self.exact_zeta is None:
            return None
        ys = np.asarray(y, dtype=float)
        return np.asarray(evaluate(parse(self.exact_zeta), 0.0, ys), dtype=float) * np.ones_like(ys)

    @classmethod
    def from_json_file(cls, path) -> "ProblemSpec":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def to_json(self) -> str:
        return json.dumps(self.model_dump(exclude_none=True), indent=2)
