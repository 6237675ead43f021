"""
Built-in problems: the numerical experiments and the two wing shapes, plus
the published table columns they are compared against.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from prandtl.errors import ConfigurationError
from prandtl.models.problem import ProblemSpec, WeakKernelConfig

# g for sigma = 2, h = log|x-y| and zeta = (1-y^2)^2, worked out in closed form
LOG_KERNEL_G = (
    "2*(1-y^2)^2"
    " - (8*y^2 - 16/3 - 4*y*(1-y^2)*log((1-y)/(1+y)))/pi"
    " + (log(1-y)*(8/15 - (y - 2*y^3/3 + y^5/5))"
    " + log(1+y)*(8/15 + (y - 2*y^3/3 + y^5/5))"
    " - 368/225 + 6*y^2/5 - 2*y^4/5)/pi"
)


@dataclass(frozen=True)
class PublishedColumn:
    """Published results: rows (m, cond, err) and the quoted summary numbers."""

    rows: Tuple[Tuple[int, float, float], ...]
    mean_eoc: Optional[float] = None
    nu: Optional[float] = None

    def err(self, m: int) -> Optional[float]:
        return next((e for mm, _, e in self.rows if mm == m), None)

    def cond(self, m: int) -> Optional[float]:
        return next((c for mm, c, _ in self.rows if mm == m), None)


@dataclass(frozen=True)
class Preset:
    name: str
    spec: ProblemSpec
    smoothness: Optional[float] = None  # predicted EOC lower bound
    published: Optional[PublishedColumn] = None
    m_list: Tuple[int, ...] = field(default=(8, 16, 32, 64, 128, 256, 512))


LOG_KERNEL_TABLE = PublishedColumn(rows=(
    (8, 4.9982, 1.5099e-3), (16, 9.0130, 7.0718e-5), (32, 16.870, 1.6872e-6),
    (64, 32.465, 4.5720e-8), (128, 63.581, 8.8290e-10), (256, 125.76, 2.5805e-11),
    (512, 250.11, 6.4149e-13),
))

WEAK_KERNEL_TABLE = PublishedColumn(rows=(
    (8, 5.5777, 3.5841e-2), (16, 11.021, 2.1644e-2), (32, 21.911, 9.3647e-3),
    (64, 43.681, 4.7068e-3), (128, 87.390, 2.2208e-3), (256, 174.85, 9.5749e-4),
    (512, 349.82, 3.2044e-4),
), mean_eoc=1.1342, nu=1.00051)

SMOOTH_KERNEL_TABLE = PublishedColumn(rows=(
    (8, 4.9498, 9.7163e-5), (16, 9.1339, 5.3368e-6), (32, 17.478, 3.1042e-7),
    (64, 34.150, 1.5510e-8), (128, 67.481, 7.4500e-10), (256, 134.13, 5.1794e-11),
    (512, 267.44, 7.6090e-12),
), mean_eoc=3.9343)

RECT_WING_TABLE = PublishedColumn(rows=(
    (8, 2.9237, 1.0186e-3), (16, 4.8340, 4.5344e-5), (32, 8.3045, 1.6127e-6),
    (64, 15.198, 5.7771e-8), (128, 28.963, 2.1943e-9), (256, 56.503, 8.7550e-11),
))


def beta_from_mach(mach: float) -> float:
    """Prandtl-Glauert factor sqrt(1 - M^2) for subsonic M."""
    if not 0.0 <= mach < 1.0:
        raise ConfigurationError(f"Mach number must lie in [0, 1), got {mach}")
    return math.sqrt(1.0 - mach * mach)


def wing_preset(shape: str, b: float, beta: float, eps: float) -> ProblemSpec:
    """Lifting-line problem for an elliptic or rectangular wing of half-span b."""
    if b <= 0.0:
        raise ConfigurationError(f"half-span b must be positive, got {b}")
    if eps <= 0.0:
        raise ConfigurationError(f"angle of attack eps must be positive, got {eps}")
    if not 0.0 < beta <= 1.0:
        raise ConfigurationError(f"beta must lie in (0, 1], got {beta}")
    c = 2.0 * b * beta / math.pi
    g = repr(4.0 * b * eps)
    if shape == "elliptic":
        amplitude = 4.0 * eps * b / (1.0 + c)
        return ProblemSpec(label=f"wing-elliptic b={b:g} beta={beta:g} eps={eps:g}",
                           alpha=0.5, sigma_phi=repr(c), g=g,
                           exact_zeta=f"sqrt(1-y^2)*{amplitude!r}")
    if shape in ("rectangular", "rect"):
        return ProblemSpec(label=f"wing-rect b={b:g} beta={beta:g} eps={eps:g}",
                           alpha=0.5, sigma=repr(c), g=g, m_ref=1024)
    raise ConfigurationError(f"Unknown wing shape: {shape}")


def log_kernel_problem() -> ProblemSpec:
    return ProblemSpec(label="example-4.1", alpha=0.5, sigma="2",
                       h=WeakKernelConfig(kind="log"), g=LOG_KERNEL_G,
                       exact_zeta="(1-y^2)^2")


def log_kernel_linear_problem() -> ProblemSpec:
    return ProblemSpec(label="example-4.1-linear", alpha=0.5, sigma="2",
                       h=WeakKernelConfig(kind="log"),
                       g="2*y*sqrt(1-y^2) + 3*y/2 + y^3/3",
                       exact_zeta="y*sqrt(1-y^2)")


def weak_kernel_problem() -> ProblemSpec:
    return ProblemSpec(label="example-4.2", alpha=0.25, gamma=0.125, delta=0.0,
                       k="abs(cos(y - pi/4))^(9/2) + abs(sin(x))^(7/2)",
                       h=WeakKernelConfig(kind="abs_pow", mu=-1.0 / 3.0),
                       g="abs(y)^(11/2)", m_ref=1024)


def smooth_kernel_problem() -> ProblemSpec:
    return ProblemSpec(label="example-4.3", alpha=0.5, sigma_phi="y^2+1",
                       k="cos(x+y)/(x^2+y^2+20)^2",
                       g="abs(y+3/10)^(7/2) + y*sin(y)", m_ref=1024)


PRESETS: Dict[str, Callable[[], Preset]] = {
    "4.1": lambda: Preset("4.1", log_kernel_problem(), published=LOG_KERNEL_TABLE),
    "4.1-linear": lambda: Preset("4.1-linear", log_kernel_linear_problem(), m_list=(2, 4, 8)),
    "4.2": lambda: Preset("4.2", weak_kernel_problem(), smoothness=2.0 / 3.0,
                          published=WEAK_KERNEL_TABLE),
    "4.3": lambda: Preset("4.3", smooth_kernel_problem(), smoothness=3.5,
                          published=SMOOTH_KERNEL_TABLE),
    "wing-rect": lambda: Preset("wing-rect", wing_preset("rectangular", 10.0, 1.0, 0.1),
                                smoothness=1.0, published=RECT_WING_TABLE,
                                m_list=(8, 16, 32, 64, 128, 256)),
    "wing-elliptic": lambda: Preset("wing-elliptic", wing_preset("elliptic", 10.0, 1.0, 0.1),
                                    m_list=(2, 4, 8)),
}


def get_preset(name: str) -> Preset:
    factory = PRESETS.get(name)
    if not factory:
        raise ConfigurationError(f"Unknown example: {name}")
    return factory()
