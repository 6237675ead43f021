"""
Solve trace logging: one JSONL record per solve.
Trace: PROBLEM -> SYSTEM (method, m, cond) -> RESULT (residual, error vs reference).
"""

import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional


def ensure_log_dir(log_dir: str) -> Path:
    p = Path(log_dir)
    p.mkdir(parents=True, exist_ok=True)
    return p


def configure(level: str = "INFO") -> None:
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def log_trace(
    log_path: str,
    log_dir: str,
    timestamp: str,
    label: str,
    method: str,
    m: int,
    exponents: dict,
    cond_inf: Optional[float],
    residual: Optional[float],
    error: Optional[float],
    reference: Optional[str],
) -> None:
    """
    Append one JSONL record for a single solve.
    """
    dir_path = ensure_log_dir(log_dir)
    file_path = dir_path / log_path
    record = {
        "timestamp": timestamp,
        "label": label,
        "method": method,
        "m": m,
        "exponents": exponents,
        "cond_inf": cond_inf,
        "residual": residual,
        "error": error,
        "reference": reference,
    }
    with open(file_path, "a", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(record, ensure_ascii=False) + "\n")


def log_solution(
    log_dir: str,
    trace_file: str,
    label: str,
    method: str,
    m: int,
    exponents: dict,
    cond_inf: Optional[float],
    residual: Optional[float] = None,
    error: Optional[float] = None,
    reference: Optional[str] = None,
    timestamp: Optional[str] = None,
) -> None:
    # One timestamp per call; a study passes its own so all rows share it.
    log_trace(
        log_path=trace_file,
        log_dir=log_dir,
        timestamp=timestamp or datetime.now(timezone.utc).isoformat(),
        label=label,
        method=method,
        m=m,
        exponents=exponents,
        cond_inf=cond_inf,
        residual=residual,
        error=error,
        reference=reference,
    )


def log_report(log_dir: str, trace_file: str, spec, report) -> None:
    """Trace every row of a convergence report under one timestamp."""
    timestamp = datetime.now(timezone.utc).isoformat()
    exponents = {"alpha": spec.alpha, "gamma": spec.gamma, "delta": spec.delta}
    for row in report.rows:
        log_solution(log_dir, trace_file, spec.label, spec.method, row.m, exponents,
                     cond_inf=row.cond, error=row.err, reference=report.reference,
                     timestamp=timestamp)
