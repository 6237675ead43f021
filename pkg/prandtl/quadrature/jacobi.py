"""
Jacobi weights v^{a,b}(x) = (1-x)^a (1+x)^b, their orthonormal polynomials and
Gauss-Jacobi rules.

The orthonormal polynomials satisfy

    x p_n(x) = b_{n+1} p_{n+1}(x) + a_n p_n(x) + b_n p_{n-1}(x),  p_0 = 1/sqrt(mu0),

with the classical closed-form Jacobi coefficients. Gauss nodes are found by
Newton iteration on that recurrence; the Golub-Welsch eigenvalue solve is
kept as a fallback.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import beta as beta_function

from prandtl.errors import ConfigurationError, ConvergenceError, DomainError

logger = logging.getLogger(__name__)

NEWTON_TOL = 1e-15
NEWTON_MAX_ITER = 100
MAX_NODES = 4096

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class JacobiExponents:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ConfigurationError(
                f"Jacobi exponents must exceed -1, got ({self.alpha}, {self.beta})"
            )


@dataclass(frozen=True, eq=False)
class OrthoSystem:
    """Orthonormal recurrence for v^{alpha,beta}, valid for degrees 0..n_max.

    a[n] is the diagonal coefficient a_n, b[n] the off-diagonal b_n (b[0] unused).
    """

    exponents: JacobiExponents
    n_max: int
    mu0: float
    a: np.ndarray
    b: np.ndarray

    @property
    def p0(self) -> float:
        return 1.0 / math.sqrt(self.mu0)


@dataclass(frozen=True, eq=False)
class GaussRule:
    m: int
    nodes: np.ndarray
    christoffel: np.ndarray
    exponents: JacobiExponents

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.christoffel, values))


def weight_value(exps: JacobiExponents, x: ArrayLike) -> ArrayLike:
    xs = np.asarray(x, dtype=float)
    if np.any(np.abs(xs) > 1.0):
        raise DomainError(f"Jacobi weight evaluated outside [-1, 1]: {x!r}")
    if exps.alpha < 0 and np.any(xs == 1.0):
        raise DomainError(f"weight exponent {exps.alpha} < 0 is singular at x=1")
    if exps.beta < 0 and np.any(xs == -1.0):
        raise DomainError(f"weight exponent {exps.beta} < 0 is singular at x=-1")
    out = np.power(1.0 - xs, exps.alpha) * np.power(1.0 + xs, exps.beta)
    if np.ndim(x) == 0:
        return float(out)
    return out


def _recurrence_coefficients(alpha: float, beta: float, n_max: int) -> Tuple[np.ndarray, np.ndarray]:
    n = np.arange(n_max + 2, dtype=float)
    s = 2.0 * n + alpha + beta
    a = np.empty_like(n)
    a[0] = (beta - alpha) / (alpha + beta + 2.0)
    if n_max + 2 > 1:
        a[1:] = (beta * beta - alpha * alpha) / (s[1:] * (s[1:] + 2.0))
    b = np.zeros_like(n)
    if n_max + 2 > 1:
        b[1] = math.sqrt(
            4.0 * (1.0 + alpha) * (1.0 + beta)
            / ((2.0 + alpha + beta) ** 2 * (3.0 + alpha + beta))
        )
    if n_max + 2 > 2:
        k = n[2:]
        sk = s[2:]
        b[2:] = np.sqrt(
            4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta)
            / (sk * sk * (sk + 1.0) * (sk - 1.0))
        )
    return a, b


def build_ortho_system(exps: JacobiExponents, n_max: int) -> OrthoSystem:
    if n_max < 0:
        raise ConfigurationError(f"n_max must be >= 0, got {n_max}")
    a, b = _recurrence_coefficients(exps.alpha, exps.beta, n_max)
    a.setflags(write=False)
    b.setflags(write=False)
    mu0 = 2.0 ** (exps.alpha + exps.beta + 1.0) * beta_function(exps.alpha + 1.0, exps.beta + 1.0)
    return OrthoSystem(exponents=exps, n_max=n_max, mu0=float(mu0), a=a, b=b)


def _check_degree(sys: OrthoSystem, n: int) -> None:
    if n < 0 or n > sys.n_max:
        raise DomainError(f"degree {n} outside 0..{sys.n_max} of this system")


def eval_poly(sys: OrthoSystem, n: int, x: ArrayLike) -> ArrayLike:
    """p_n(x) by forward recurrence."""
    _check_degree(sys, n)
    xs = np.asarray(x, dtype=float)
    prev = np.zeros_like(xs)
    cur = np.full_like(xs, sys.p0)
    for k in range(n):
        prev, cur = cur, ((xs - sys.a[k]) * cur - sys.b[k] * prev) / sys.b[k + 1]
    if np.ndim(x) == 0:
        return float(cur)
    return cur


def eval_all(sys: OrthoSystem, n: int, x: ArrayLike) -> np.ndarray:
    """Matrix P[i, j] = p_j(x_i), j = 0..n."""
    _check_degree(sys, n)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((xs.size, n + 1))
    out[:, 0] = sys.p0
    if n >= 1:
        out[:, 1] = (xs - sys.a[0]) * sys.p0 / sys.b[1]
    for k in range(1, n):
        out[:, k + 1] = ((xs - sys.a[k]) * out[:, k] - sys.b[k] * out[:, k - 1]) / sys.b[k + 1]
    return out


def _value_and_derivative(sys: OrthoSystem, n: int, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    p_prev = np.zeros_like(xs)
    p = np.full_like(xs, sys.p0)
    d_prev = np.zeros_like(xs)
    d = np.zeros_like(xs)
    for k in range(n):
        p_next = ((xs - sys.a[k]) * p - sys.b[k] * p_prev) / sys.b[k + 1]
        d_next = ((xs - sys.a[k]) * d + p - sys.b[k] * d_prev) / sys.b[k + 1]
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return p, d


def _valid_nodes(xs: np.ndarray, m: int) -> bool:
    return (
        xs.size == m
        and bool(np.all(np.isfinite(xs)))
        and bool(np.all(np.abs(xs) < 1.0))
        and bool(np.all(np.diff(xs) > 0.0))
    )


def _newton_nodes(sys: OrthoSystem, m: int) -> np.ndarray:
    al, be = sys.exponents.alpha, sys.exponents.beta
    k = np.arange(1, m + 1, dtype=float)
    theta = (k + 0.5 * al - 0.25) * np.pi / (m + 0.5 * (al + be + 1.0))
    xs = np.cos(theta)[::-1].copy()
    for _ in range(NEWTON_MAX_ITER):
        p, dp = _value_and_derivative(sys, m, xs)
        dx = p / dp
        xs -= dx
        if np.max(np.abs(dx)) <= NEWTON_TOL:
            return xs
    raise ConvergenceError(f"Newton iteration for {m} Gauss nodes did not converge")


def _eigen_nodes(sys: OrthoSystem, m: int) -> np.ndarray:
    xs = eigh_tridiagonal(np.asarray(sys.a[:m]), np.asarray(sys.b[1:m]), eigvals_only=True)
    xs = np.sort(xs)
    # polish on the recurrence; the eigen-solve is only accurate to ~m*eps
    for _ in range(3):
        p, dp = _value_and_derivative(sys, m, xs)
        xs = xs - p / dp
    return xs


def gauss_rule(sys: OrthoSystem, m: int) -> GaussRule:
    """m-point Gauss rule for the weight of sys: zeros of p_m and Christoffel numbers."""
    if m < 1 or m > MAX_NODES:
        raise DomainError(f"Gauss rule size must be in 1..{MAX_NODES}, got {m}")
    if sys.n_max < m:
        raise DomainError(f"orthonormal system built to degree {sys.n_max} < {m}")
    try:
        xs = _newton_nodes(sys, m)
    except ConvergenceError:
        xs = None
    if xs is None or not _valid_nodes(xs, m):
        logger.warning("Newton nodes rejected for m=%d %s; using tridiagonal eigen-solve", m, sys.exponents)
        xs = _eigen_nodes(sys, m)
        if not _valid_nodes(xs, m):
            raise ConvergenceError(f"could not compute {m} Gauss nodes for {sys.exponents}")
    table = eval_all(sys, m - 1, xs)
    lam = 1.0 / np.sum(table * table, axis=1)
    xs.setflags(write=False)
    lam.setflags(write=False)
    return GaussRule(m=m, nodes=xs, christoffel=lam, exponents=sys.exponents)


@lru_cache(maxsize=512)
def cached_system(alpha: float, beta: float, n_max: int) -> OrthoSystem:
    return build_ortho_system(JacobiExponents(alpha, beta), n_max)


@lru_cache(maxsize=512)
def cached_rule(alpha: float, beta: float, m: int) -> GaussRule:
    return gauss_rule(cached_system(alpha, beta, m), m)
