"""
Modified moments c_j(y) = int_{-1}^{1} h(x, y) p_j^rho(x) rho(x) dx, j = 0..m-1.

The integral is split at x = y and written on each side in the distance
s = |x - y|, s in [0, L]:

    s^mu [log s] (L - s)^e_far (d + s)^e_ext p_j(y +- s),

where L is the distance from y to the far endpoint and d the distance to the
other one. The far half [L/2, L] uses Gauss-Jacobi with weight (1-t)^e_far.
The near half is cut at L/4, L/8, ... until the last breakpoint s_K is no
larger than d (and, for log kernels, until the remaining tail is negligible);
the panels in between use Gauss-Legendre and [0, s_K] uses Gauss-Jacobi with
weight (1+t)^mu. Every y contributes a flat list of (x, weight) pairs and one
three-term recurrence sweep over all of them yields every c_j at once.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from prandtl.errors import ConvergenceError, DomainError
from prandtl.kernels.base import WeakKernel
from prandtl.quadrature.jacobi import OrthoSystem, cached_rule

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-15
DEFAULT_NODE_MARGIN = 16
DEFAULT_BLOCK_SIZE = 64
MAX_PANELS = 400
NODE_STEP = 8


@dataclass(frozen=True, eq=False)
class MomentTable:
    """values[i, j] = c_j(y_i)."""

    y: np.ndarray
    values: np.ndarray
    kernel: WeakKernel

    @property
    def m(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return self.y.size


@dataclass(frozen=True)
class MomentOptions:
    tolerance: float = DEFAULT_TOLERANCE
    node_margin: int = DEFAULT_NODE_MARGIN
    block_size: int = DEFAULT_BLOCK_SIZE
    threads: int = 1


def panel_nodes(n_deg: int, width: float, margin: int = DEFAULT_NODE_MARGIN) -> int:
    """Gauss points for a panel of the given x-width carrying polynomials of degree n_deg."""
    full = math.ceil((n_deg + 1) / 2) + margin
    local = margin + math.ceil(n_deg * math.sqrt(min(width, 2.0)))
    n = min(full, local)
    return NODE_STEP * math.ceil(n / NODE_STEP)


def _side_panels(kernel: WeakKernel, y: float, side: int, sys: OrthoSystem, n_deg: int,
                 opts: MomentOptions) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    alpha, beta = sys.exponents.alpha, sys.exponents.beta
    if side > 0:
        length, dist, e_far, e_ext = 1.0 - y, 1.0 + y, alpha, beta
    else:
        length, dist, e_far, e_ext = 1.0 + y, 1.0 - y, beta, alpha
    sign = kernel.side_sign(side)
    mu = kernel.mu
    xs: List[np.ndarray] = []
    ws: List[np.ndarray] = []

    def push(s: np.ndarray, w: np.ndarray) -> None:
        xs.append(y + side * s)
        ws.append(sign * w)

    # far half: (L - s)^e_far absorbed in the rule
    quarter = 0.25 * length
    far = cached_rule(e_far, 0.0, panel_nodes(n_deg, 0.5 * length, opts.node_margin))
    s = 3.0 * quarter + quarter * far.nodes
    w = far.christoffel * quarter ** (e_far + 1.0) * kernel.radial(s) * np.power(dist + s, e_ext)
    push(s, w)

    # near half, geometric toward s = 0
    top = 0.5 * length
    scale = top ** (mu + 1.0) * (1.0 + abs(math.log(top))) / (mu + 1.0)
    panels = 0
    while True:
        done = top <= dist
        if done and kernel.has_log:
            tail = top ** (mu + 1.0) * (abs(math.log(top)) * (mu + 1.0) + 1.0) / (mu + 1.0) ** 2
            done = tail <= opts.tolerance * scale
        if done:
            break
        panels += 1
        if panels > MAX_PANELS:
            raise ConvergenceError("moment quadrature tail not reached", y=y,
                                   degrees=(0, n_deg))
        low = 0.5 * top
        half = 0.5 * (top - low)
        leg = cached_rule(0.0, 0.0, panel_nodes(n_deg, top - low, opts.node_margin))
        s = low + half + half * leg.nodes
        w = leg.christoffel * half * kernel.radial(s) * np.power(length - s, e_far) * np.power(dist + s, e_ext)
        push(s, w)
        top = low

    # innermost panel [0, top]: s^mu absorbed in the rule
    half = 0.5 * top
    inner = cached_rule(0.0, mu, panel_nodes(n_deg, top, opts.node_margin))
    s = half * (1.0 + inner.nodes)
    w = inner.christoffel * half ** (mu + 1.0) * np.power(length - s, e_far) * np.power(dist + s, e_ext)
    if kernel.has_log:
        w = w * np.log(s)
    push(s, w)
    return xs, ws


def _moment_block(sys: OrthoSystem, kernel: WeakKernel, ys: np.ndarray, m: int,
                  opts: MomentOptions) -> np.ndarray:
    n_deg = m - 1
    xs: List[np.ndarray] = []
    ws: List[np.ndarray] = []
    offsets = np.empty(ys.size, dtype=np.intp)
    count = 0
    for i, y in enumerate(ys):
        offsets[i] = count
        for side in (1, -1):
            px, pw = _side_panels(kernel, float(y), side, sys, n_deg, opts)
            xs.extend(px)
            ws.extend(pw)
            count += sum(p.size for p in px)
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    out = np.empty((ys.size, m))
    prev = np.zeros_like(x)
    cur = np.full_like(x, sys.p0)
    for j in range(m):
        out[:, j] = np.add.reduceat(w * cur, offsets)
        if j + 1 < m:
            prev, cur = cur, ((x - sys.a[j]) * cur - sys.b[j] * prev) / sys.b[j + 1]
    return out


def modified_moments(sys_rho: OrthoSystem, kernel: WeakKernel, y_points: Sequence[float], m: int,
                     options: Optional[MomentOptions] = None) -> MomentTable:
    """Table of c_j(y_i), j = 0..m-1, for the weight of sys_rho."""
    if kernel is None:
        raise DomainError("modified moments need a weak kernel")
    opts = options or MomentOptions()
    ys = np.atleast_1d(np.asarray(y_points, dtype=float))
    if m < 1:
        raise DomainError(f"moment count must be >= 1, got {m}")
    if sys_rho.n_max < m - 1:
        raise DomainError(f"orthonormal system built to degree {sys_rho.n_max} < {m - 1}")
    if np.any(np.abs(ys) >= 1.0):
        raise DomainError("moment points must lie strictly inside (-1, 1)")
    started = time.perf_counter()
    blocks = [ys[k:k + opts.block_size] for k in range(0, ys.size, max(1, opts.block_size))]
    if opts.threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=opts.threads) as pool:
            parts = list(pool.map(lambda b: _moment_block(sys_rho, kernel, b, m, opts), blocks))
    else:
        parts = [_moment_block(sys_rho, kernel, b, m, opts) for b in blocks]
    values = np.vstack(parts) if parts else np.empty((0, m))
    if not np.all(np.isfinite(values)):
        bad = int(np.argwhere(~np.isfinite(values))[0, 0])
        raise ConvergenceError("non-finite modified moment", y=float(ys[bad]), degrees=(0, m - 1))
    logger.debug("moments %r: %d points x %d degrees in %.2fs", kernel, ys.size, m,
                 time.perf_counter() - started)
    ys = ys.copy()
    ys.setflags(write=False)
    values.setflags(write=False)
    return MomentTable(y=ys, values=values, kernel=kernel)
