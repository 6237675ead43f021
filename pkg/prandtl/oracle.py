"""
Brute-force reference computations for cross-checking the solver.

Nothing here touches the package's own Gauss-Jacobi rules or recurrences:
plain integrals use globally adaptive Gauss-Legendre panels from numpy,
weighted and principal-value integrals go through QUADPACK (scipy.integrate.quad
with algebraic or Cauchy weights), and orthonormal Jacobi polynomials come
from scipy.special.eval_jacobi.
"""

import heapq
import logging
import math
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import betaln, eval_jacobi, gammaln

from prandtl.errors import ConvergenceError, DomainError
from prandtl.funcdsl import Expr, evaluate, parse
from prandtl.kernels.base import WeakKernel
from prandtl.quadrature.jacobi import JacobiExponents

logger = logging.getLogger(__name__)

MAX_PANELS = 200_000
QUAD_LIMIT = 500
QUAD_ACCEPT = 1e-10
ROUNDOFF = 50.0 * np.finfo(float).eps

_LOW = leggauss(10)
_HIGH = leggauss(20)

Integrand = Union[str, Expr, Callable[[np.ndarray], np.ndarray]]


def _as_callable(f: Integrand) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(f, str):
        f = parse(f)
    if callable(f):
        return f
    expr = f
    return lambda x: np.asarray(evaluate(expr, x, 0.0), dtype=float) * np.ones_like(x)


def _panel(f, lo: float, hi: float):
    """(value, error estimate, integral of |f|) on one panel."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    low = half * np.dot(_LOW[1], f(mid + half * _LOW[0]))
    values = f(mid + half * _HIGH[0])
    high = half * np.dot(_HIGH[1], values)
    magnitude = half * np.dot(_HIGH[1], np.abs(values))
    return high, max(abs(high - low), ROUNDOFF * magnitude), magnitude


def adaptive_integral(f: Integrand, a: float, b: float, singular_points: Iterable[float] = (),
                      tol: float = 1e-12, max_panels: int = MAX_PANELS) -> float:
    """int_a^b f by globally adaptive bisection of 10/20-point Gauss-Legendre panels.

    Breakpoints go at the singular points. The panel with the largest error
    estimate is split until the estimates sum below tol, or below the
    rounding level of the integral of |f| when that is larger.
    """
    if not b > a:
        raise DomainError(f"empty interval [{a}, {b}]")
    func = _as_callable(f)
    cuts = sorted({float(s) for s in singular_points if a <= s <= b} | {a, b})
    heap = []
    settled = []
    error_sum = magnitude_sum = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi > lo:
            value, err, mag = _panel(func, lo, hi)
            heapq.heappush(heap, (-err, lo, hi, value, mag))
            error_sum += err
            magnitude_sum += mag
    panels = len(heap)
    while heap and error_sum > max(tol, 2.0 * ROUNDOFF * magnitude_sum):
        neg_err, lo, hi, value, mag = heapq.heappop(heap)
        error_sum += neg_err
        magnitude_sum -= mag
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            settled.append(value)
            continue
        panels += 2
        if panels > max_panels:
            raise ConvergenceError(f"adaptive integral on [{a}, {b}] exceeded {max_panels} panels")
        for left, right in ((lo, mid), (mid, hi)):
            v, err, m = _panel(func, left, right)
            heapq.heappush(heap, (-err, left, right, v, m))
            error_sum += err
            magnitude_sum += m
        if panels % 1024 == 0:
            # resynchronise the running sums
            error_sum = -math.fsum(entry[0] for entry in heap)
            magnitude_sum = math.fsum(entry[4] for entry in heap)
    return math.fsum([entry[3] for entry in heap] + settled)


def _quad(func, lo: float, hi: float, tol: float, **weighting) -> float:
    value, abserr = integrate.quad(func, lo, hi, epsabs=tol, epsrel=tol, limit=QUAD_LIMIT, **weighting)
    if not abserr <= QUAD_ACCEPT:
        raise ConvergenceError(f"weighted integral on [{lo}, {hi}] stalled at error {abserr:.2e}")
    return value


def jacobi_weight(exps: JacobiExponents, x: np.ndarray) -> np.ndarray:
    return np.power(1.0 - x, exps.alpha) * np.power(1.0 + x, exps.beta)


def orthonormal_jacobi(n: int, alpha: float, beta: float, x) -> np.ndarray:
    """p_n for (1-x)^alpha (1+x)^beta from scipy's classical Jacobi polynomial."""
    log_h = ((alpha + beta + 1.0) * math.log(2.0) + gammaln(n + alpha + 1.0) + gammaln(n + beta + 1.0)
             - math.log(2.0 * n + alpha + beta + 1.0) - gammaln(n + alpha + beta + 1.0) - gammaln(n + 1.0))
    if n == 0:
        log_h = (alpha + beta + 1.0) * math.log(2.0) + betaln(alpha + 1.0, beta + 1.0)
    return eval_jacobi(n, alpha, beta, np.asarray(x, dtype=float)) / math.exp(0.5 * log_h)


def monomial_moments(alpha: float, beta: float, d_max: int) -> np.ndarray:
    """int x^d (1-x)^alpha (1+x)^beta dx for d = 0..d_max."""
    out = np.empty(d_max + 1)
    out[0] = math.exp((alpha + beta + 1.0) * math.log(2.0) + betaln(alpha + 1.0, beta + 1.0))
    if d_max >= 1:
        out[1] = (beta - alpha) / (alpha + beta + 2.0) * out[0]
    for d in range(1, d_max):
        out[d + 1] = (d * out[d - 1] + (beta - alpha) * out[d]) / (d + alpha + beta + 2.0)
    return out


def pv_cauchy(f: Union[Callable[[np.ndarray], np.ndarray], Integrand], rho: JacobiExponents, y: float,
              tol: float = 1e-13) -> float:
    """PV int_{-1}^{1} f(x) rho(x) / (x - y) dx with QUADPACK's Cauchy weight."""
    if not -1.0 < y < 1.0:
        raise DomainError(f"principal value needs |y| < 1, got {y}")
    func = _as_callable(f)

    def numerator(x: float) -> float:
        xs = np.array([x])
        return float(np.asarray(func(xs), dtype=float).reshape(-1)[0] * jacobi_weight(rho, xs)[0])

    return _quad(numerator, -1.0, 1.0, tol, weight="cauchy", wvar=y)


def verify_spectral_identity(n: int, alpha: float, step: float = 1e-5, points: int = 20) -> float:
    """Max relative gap between D A^rho p_n^rho (central differences) and (n+1) p_n^w."""
    if n < 0 or n > 20:
        raise DomainError(f"degree must be in 0..20, got {n}")
    if not 1e-6 <= step <= 1e-4:
        raise DomainError(f"step must be in [1e-6, 1e-4], got {step}")
    rho = JacobiExponents(alpha, 1.0 - alpha)
    a = math.cos(math.pi * alpha)
    b = -math.sin(math.pi * alpha)

    def p_rho(x):
        return orthonormal_jacobi(n, rho.alpha, rho.beta, x)

    def a_rho(y: float) -> float:
        yy = np.array([y])
        return float(a * jacobi_weight(rho, yy)[0] * p_rho(yy)[0]) + b / math.pi * pv_cauchy(p_rho, rho, y)

    ys = np.linspace(-0.9, 0.9, points)
    derivative = np.array([(a_rho(y + step) - a_rho(y - step)) / (2.0 * step) for y in ys])
    expected = (n + 1) * orthonormal_jacobi(n, 1.0 - alpha, alpha, ys)
    scale = max(float(np.max(np.abs(expected))), np.finfo(float).tiny)
    return float(np.max(np.abs(derivative - expected))) / scale


def moment_oracle(rho: JacobiExponents, kernel: WeakKernel, y: float, j: int, tol: float = 1e-13) -> float:
    """c_j(y) = int h(x, y) p_j(x) rho(x) dx, integrated in s = |x - y| on each side.

    On each side s^mu (times log s) and the far endpoint factor are the
    algebraic weight of the QUADPACK rule; the rest is smooth.
    """
    if not -1.0 < y < 1.0:
        raise DomainError(f"moment point must lie in (-1, 1), got {y}")
    weight = "alg-loga" if kernel.has_log else "alg"
    total = 0.0
    for side in (1, -1):
        length = 1.0 - y if side > 0 else 1.0 + y
        dist = 1.0 + y if side > 0 else 1.0 - y
        e_far, e_near = (rho.alpha, rho.beta) if side > 0 else (rho.beta, rho.alpha)
        sign = float(side) if kernel.odd else 1.0

        def smooth(s: float, side=side, dist=dist, e_near=e_near, sign=sign) -> float:
            p = float(orthonormal_jacobi(j, rho.alpha, rho.beta, y + side * s))
            return sign * (dist + s) ** e_near * p

        total += _quad(smooth, 0.0, length, tol, weight=weight, wvar=(kernel.mu, e_far))
    return total


def brute_moments(rho: JacobiExponents, kernel: WeakKernel, ys: Sequence[float], m: int,
                  tol: float = 1e-13, degrees: Optional[Sequence[int]] = None) -> np.ndarray:
    """Oracle table out[i, j] = c_j(y_i) for the requested degrees (default 0..m-1)."""
    js = list(range(m)) if degrees is None else list(degrees)
    return np.array([[moment_oracle(rho, kernel, float(y), j, tol) for j in js] for y in ys])


def _cos_sin_integral(j: np.ndarray) -> np.ndarray:
    """int_0^pi cos(j t) sin(t) dt = (1 + (-1)^j) / (1 - j^2) for integer j."""
    j = np.asarray(j)
    even = j % 2 == 0
    out = np.zeros(j.shape)
    out[even] = 2.0 / (1.0 - j[even].astype(float) ** 2)
    return out


def rectangular_wing_reference(c: float, g: float, modes: int = 1024) -> Callable[[np.ndarray], np.ndarray]:
    """zeta for (c phi) d + D A^phi d = g, constant c and g, by a Chebyshev-U Galerkin solve.

    With y = cos(t) and d = sum_n a_n sqrt(2/pi) U_n, D A^phi is diagonal (n+1)
    and multiplication by c phi couples modes n and k through
    (2/pi) int_0^pi sin((n+1)t) sin((k+1)t) sin(t) dt, known in closed form.
    """
    if modes < 1:
        raise DomainError(f"need at least one mode, got {modes}")
    n = np.arange(modes)
    upper = n[None, :] + 1
    lower = n[:, None] + 1
    coupling = 0.5 * (_cos_sin_integral(upper - lower) - _cos_sin_integral(upper + lower))
    matrix = c * (2.0 / math.pi) * coupling + np.diag(n + 1.0)
    rhs = np.zeros(modes)
    rhs[0] = g * math.sqrt(2.0 / math.pi) * (math.pi / 2.0)
    coefficients = np.linalg.solve(matrix, rhs)
    logger.debug("rectangular wing reference: %d modes, last |a_n| = %.2e", modes, abs(coefficients[-1]))

    def zeta(y) -> np.ndarray:
        theta = np.arccos(np.clip(np.asarray(y, dtype=float), -1.0, 1.0))
        return math.sqrt(2.0 / math.pi) * (np.sin(np.multiply.outer(theta, n + 1.0)) @ coefficients)

    return zeta
