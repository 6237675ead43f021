"""
Error measurement and convergence studies.

err_m = max_i u(y_i) |zeta_ref(y_i) - zeta_m(y_i)| on y_i = -1 + i/100, i = 0..200.
EOC and nu compare consecutive doublings m -> 2m and are reported on the 2m row.
"""

import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from prandtl.errors import ConfigurationError, DomainError
from prandtl.funcdsl import Expr, evaluate, parse
from prandtl.kernels.moments import MomentOptions
from prandtl.models.problem import ProblemSpec
from prandtl.quadrature.jacobi import weight_value
from prandtl.solver.solve import RESIDUAL_FACTOR, ApproxSolution, evaluate_zeta, solve

logger = logging.getLogger(__name__)

ERROR_GRID = -1.0 + np.arange(201) / 100.0
ERROR_GRID.setflags(write=False)

CSV_HEADER = "m,cond_inf,err,EOC,nu"

Reference = Union[str, Expr, ApproxSolution, Callable[[np.ndarray], np.ndarray]]


def _reference_values(reference: Reference, grid: np.ndarray) -> np.ndarray:
    if isinstance(reference, ApproxSolution):
        return np.asarray(evaluate_zeta(reference, grid), dtype=float)
    if isinstance(reference, str):
        reference = parse(reference)
    if callable(reference):
        return np.asarray(reference(grid), dtype=float) * np.ones_like(grid)
    return np.asarray(evaluate(reference, 0.0, grid), dtype=float) * np.ones_like(grid)


def error_metrics(s: ApproxSolution, reference: Reference, grid: Optional[np.ndarray] = None) -> float:
    """Weighted max error of zeta_m against an exact zeta or a reference solution."""
    if reference is None:
        raise DomainError("error_metrics needs a reference")
    ys = ERROR_GRID if grid is None else np.asarray(grid, dtype=float)
    ref = _reference_values(reference, ys)
    approx = np.asarray(evaluate_zeta(s, ys), dtype=float)
    u = np.asarray(weight_value(s.spec.u, ys), dtype=float)
    return float(np.max(u * np.abs(ref - approx)))


def eoc(err_m: float, err_2m: float) -> float:
    if not (err_m > 0.0 and err_2m > 0.0):
        raise DomainError(f"EOC needs positive errors, got {err_m!r}, {err_2m!r}")
    return math.log(err_m / err_2m) / math.log(2.0)


def nu_estimator(cond_m: float, cond_2m: float) -> float:
    if not (cond_m >= 1.0 and cond_2m >= 1.0):
        raise DomainError(f"condition numbers must be >= 1, got {cond_m!r}, {cond_2m!r}")
    return math.log(cond_2m / cond_m) / math.log(2.0)


@dataclass(frozen=True)
class StudyRow:
    m: int
    cond: Optional[float]
    err: Optional[float]
    eoc: Optional[float] = None
    nu: Optional[float] = None


def _fmt(value: Optional[float]) -> str:
    if value is None or not math.isfinite(value):
        return "" if value is None else ("inf" if value > 0 else "nan")
    return f"{value:.4e}"


@dataclass(frozen=True)
class ConvergenceReport:
    label: str
    rows: List[StudyRow]
    reference: str = ""
    notes: List[str] = field(default_factory=list)

    @property
    def mean_eoc(self) -> Optional[float]:
        values = [r.eoc for r in self.rows if r.eoc is not None]
        return sum(values) / len(values) if values else None

    @property
    def mean_nu(self) -> Optional[float]:
        values = [r.nu for r in self.rows if r.nu is not None]
        return sum(values) / len(values) if values else None

    def window(self, m_min: int, m_max: int) -> "ConvergenceReport":
        """Rows with m_min <= m <= m_max; a rate whose doubling starts below m_min is dropped."""
        kept = []
        for r in self.rows:
            if m_min <= r.m <= m_max:
                if r.m < 2 * m_min:
                    r = StudyRow(m=r.m, cond=r.cond, err=r.err)
                kept.append(r)
        return ConvergenceReport(label=self.label, rows=kept, reference=self.reference, notes=list(self.notes))

    def row(self, m: int) -> Optional[StudyRow]:
        return next((r for r in self.rows if r.m == m), None)

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write(CSV_HEADER + "\n")
        for r in self.rows:
            buf.write(f"{r.m},{_fmt(r.cond)},{_fmt(r.err)},{_fmt(r.eoc)},{_fmt(r.nu)}\n")
        return buf.getvalue()

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"m": r.m, "cond_inf": r.cond, "err": r.err, "EOC": r.eoc, "nu": r.nu} for r in self.rows],
            columns=["m", "cond_inf", "err", "EOC", "nu"],
        )


def build_rows(results: Sequence[ApproxSolution], errors: Sequence[Optional[float]]) -> List[StudyRow]:
    """Rows ordered by m with EOC/nu on the second row of every doubling pair."""
    pairs = sorted(zip(results, errors), key=lambda p: p[0].m)
    rows: List[StudyRow] = []
    for idx, (sol, err) in enumerate(pairs):
        rate = nu = None
        if idx > 0:
            prev, prev_err = pairs[idx - 1]
            if sol.m == 2 * prev.m:
                if prev_err and err and prev_err > 0.0 and err > 0.0:
                    rate = eoc(prev_err, err)
                if prev.cond is not None and sol.cond is not None \
                        and math.isfinite(prev.cond) and math.isfinite(sol.cond):
                    nu = nu_estimator(prev.cond, sol.cond)
        rows.append(StudyRow(m=sol.m, cond=sol.cond, err=err, eoc=rate, nu=nu))
    return rows


def convergence_study(p: ProblemSpec, m_list: Sequence[int], reference: Union[str, int, None] = None,
                      moment_options: Optional[MomentOptions] = None, threads: int = 1,
                      default_m_ref: int = 1024,
                      residual_factor: float = RESIDUAL_FACTOR) -> ConvergenceReport:
    """Solve for every m and measure against the exact zeta or zeta_{m_ref}.

    reference: "exact", an integer m_ref, or None to use the exact solution when
    the problem carries one and p.m_ref (else default_m_ref) otherwise.
    """
    ms = [int(m) for m in m_list]
    if not ms:
        raise ConfigurationError("m_list is empty")
    if any(m < 2 for m in ms):
        raise ConfigurationError(f"every m must be >= 2, got {ms}")
    if any(b <= a for a, b in zip(ms, ms[1:])):
        raise ConfigurationError(f"m_list must be strictly ascending, got {ms}")

    if reference is None:
        reference = "exact" if p.exact_zeta is not None else (p.m_ref or default_m_ref)
    if reference == "exact":
        if p.exact_zeta is None:
            raise ConfigurationError(f"'{p.label}' has no exact solution; use a reference order")
        ref: Reference = parse(p.exact_zeta)
        ref_label = f"exact: {p.exact_zeta}"
    else:
        m_ref = int(reference)
        logger.info("'%s': reference solve at m=%d", p.label, m_ref)
        ref_opts = moment_options
        if moment_options is not None and threads > 1:
            ref_opts = MomentOptions(moment_options.tolerance, moment_options.node_margin,
                                     moment_options.block_size, threads)
        ref = solve(p, m_ref, ref_opts, with_cond=False, residual_factor=residual_factor)
        ref_label = f"zeta_{m_ref}"

    def run(m: int) -> ApproxSolution:
        return solve(p, m, moment_options, residual_factor=residual_factor)

    if threads > 1 and len(ms) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, ms))
    else:
        results = [run(m) for m in ms]
    errors = [error_metrics(s, ref) for s in results]
    rows = build_rows(results, errors)
    report = ConvergenceReport(label=p.label, rows=rows, reference=ref_label)
    logger.info("'%s': %d rows, mean EOC %s", p.label, len(rows),
                "n/a" if report.mean_eoc is None else f"{report.mean_eoc:.4f}")
    return report
