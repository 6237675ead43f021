"""
Command-line entry: solve Prandtl-type equations, run convergence studies and
reproduce the published tables.

    python -m prandtl.main solve  --config data/example_4_3.json --m 64
    python -m prandtl.main study  --config data/example_4_2.json --m-list 8,16,32 --ref 1024
    python -m prandtl.main wing   --shape elliptic --b 10 --beta 1 --eps 0.1 --m-list 2
    python -m prandtl.main tables --example 4.1
    python -m prandtl.main check  --config data/example_4_2.json
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from prandtl.config import load_config, moment_options, resolve_threads, residual_factor
from prandtl.errors import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    FuncSyntaxError,
    SingularSystemError,
)
from prandtl.kernels import get_weak_kernel
from prandtl.logging.logger import configure, log_report, log_solution
from prandtl.models.presets import PRESETS, get_preset, wing_preset
from prandtl.models.problem import ProblemSpec
from prandtl.quadrature.jacobi import cached_system
from prandtl.quadrature.lagrange import ValidationMode, validate_exponents
from prandtl.solver.solve import ApproxSolution, evaluate_zeta, solve
from prandtl.solver.study import ERROR_GRID, ConvergenceReport, convergence_study, error_metrics

_root = Path(__file__).resolve().parent.parent

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_CONFIG = 2


def parse_m_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigurationError(f"--m-list must be comma-separated integers, got {text!r}")
    if not values:
        raise ConfigurationError("--m-list is empty")
    return values


def parse_reference(text: Optional[str]):
    if text is None or text == "exact":
        return text
    try:
        return int(text)
    except ValueError:
        raise ConfigurationError(f"--ref must be 'exact' or an integer order, got {text!r}")


def _log_dir(args, cfg: dict) -> Path:
    log_dir = Path(args.log_dir or cfg.get("logging", {}).get("log_dir", "logs"))
    return log_dir if log_dir.is_absolute() else _root / log_dir


def _trace_file(cfg: dict) -> str:
    return cfg.get("logging", {}).get("trace_file", "traces.jsonl")


def _trace(args, cfg: dict, solution: ApproxSolution, error: Optional[float], reference: Optional[str]) -> None:
    spec = solution.spec
    log_solution(str(_log_dir(args, cfg)), _trace_file(cfg), spec.label, solution.method, solution.m,
                 {"alpha": spec.alpha, "gamma": spec.gamma, "delta": spec.delta},
                 cond_inf=solution.cond, residual=solution.residual, error=error, reference=reference)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args, cfg: dict) -> int:
    spec = ProblemSpec.from_json_file(args.config)
    threads = resolve_threads(cfg)
    refine = args.refine or bool(cfg.get("solver", {}).get("refine", False))
    solution = solve(spec, args.m, moment_options(cfg, threads), refine=refine,
                     residual_factor=residual_factor(cfg))
    zeta = evaluate_zeta(solution, ERROR_GRID)
    error = error_metrics(solution, spec.exact_zeta) if spec.exact_zeta else None
    lines = ["y,zeta"] + [f"{y:.2f},{z:.16e}" for y, z in zip(ERROR_GRID, zeta)]
    _emit("\n".join(lines) + "\n", args.out)
    summary = f"m={solution.m},cond_inf={solution.cond:.4e},residual={solution.residual:.4e}"
    if error is not None:
        summary += f",err={error:.4e}"
    print(summary, file=sys.stderr)
    _trace(args, cfg, solution, error, "exact" if error is not None else None)
    return EXIT_OK


def _study(args, cfg: dict, spec: ProblemSpec, m_list: List[int], reference) -> ConvergenceReport:
    threads = resolve_threads(cfg)
    default_m_ref = int(cfg.get("reference", {}).get("m_ref", 1024))
    report = convergence_study(spec, m_list, reference=reference,
                               moment_options=moment_options(cfg, 1), threads=threads,
                               default_m_ref=default_m_ref, residual_factor=residual_factor(cfg))
    log_report(str(_log_dir(args, cfg)), _trace_file(cfg), spec, report)
    return report


def cmd_study(args, cfg: dict) -> int:
    spec = ProblemSpec.from_json_file(args.config)
    m_list = parse_m_list(args.m_list) if args.m_list else list(cfg.get("study", {}).get("m_list", []))
    report = _study(args, cfg, spec, m_list, parse_reference(args.ref))
    _emit(report.to_csv(), args.out)
    return EXIT_OK


def cmd_wing(args, cfg: dict) -> int:
    spec = wing_preset(args.shape, args.b, args.beta, args.eps)
    m_list = parse_m_list(args.m_list)
    report = _study(args, cfg, spec, m_list, parse_reference(args.ref))
    _emit(report.to_csv(), args.out)
    return EXIT_OK


def cmd_tables(args, cfg: dict) -> int:
    preset = get_preset(args.example)
    m_list = parse_m_list(args.m_list) if args.m_list else list(preset.m_list)
    report = _study(args, cfg, preset.spec, m_list, parse_reference(args.ref))
    _emit(report.to_csv(), args.out)
    if report.mean_eoc is not None:
        print(f"mean_eoc={report.mean_eoc:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_check(args, cfg: dict) -> int:
    spec = ProblemSpec.from_json_file(args.config)
    method_mode = ValidationMode.METHOD2 if spec.has_sigma else ValidationMode.METHOD1
    status = EXIT_OK
    for mode in (method_mode, ValidationMode.INTERPOLATION, ValidationMode.CHRISTOFFEL):
        report = validate_exponents(spec.alpha, spec.gamma, spec.delta, mode)
        detail = "ok" if report.ok else "; ".join(report.violations)
        print(f"{mode.value}: {detail}")
        if mode is method_mode and not report.ok:
            status = EXIT_CONFIG
    return status


def cmd_moments(args, cfg: dict) -> int:
    from prandtl import oracle
    from prandtl.kernels.moments import modified_moments

    kernel = get_weak_kernel(args.kind, {"mu": args.mu})
    system = cached_system(args.alpha, 1.0 - args.alpha, args.m)
    try:
        ys = [float(v) for v in args.y.split(",")]
    except ValueError:
        raise ConfigurationError(f"--y must be comma-separated numbers, got {args.y!r}")
    table = modified_moments(system, kernel, ys, args.m, moment_options(cfg, resolve_threads(cfg)))
    check = min(args.m, args.check)
    brute = oracle.brute_moments(system.exponents, kernel, ys, check)
    deviation = float(np.max(np.abs(table.values[:, :check] - brute))) if check else 0.0
    lines = ["y," + ",".join(f"c{j}" for j in range(args.m))]
    lines += [f"{float(y)!r}," + ",".join(f"{v:.16e}" for v in row) for y, row in zip(table.y, table.values)]
    _emit("\n".join(lines) + "\n", args.out)
    print(f"oracle_deviation={deviation:.3e} (degrees 0..{check - 1})", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prandtl", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--log-dir", default=None, help="trace directory (default from config.yaml)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{solve,study,wing,tables,check}")

    p = sub.add_parser("solve", help="one solve, zeta_m on the 201-point grid")
    p.add_argument("--config", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--refine", action="store_true", help="one step of iterative refinement")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("study", help="convergence study as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--m-list")
    p.add_argument("--ref", help="'exact' or a reference order such as 1024")
    p.add_argument("--out")
    p.set_defaults(func=cmd_study)

    p = sub.add_parser("wing", help="lifting-line study for an elliptic or rectangular wing")
    p.add_argument("--shape", required=True, choices=["elliptic", "rectangular"])
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--m-list", required=True)
    p.add_argument("--ref")
    p.add_argument("--out")
    p.set_defaults(func=cmd_wing)

    p = sub.add_parser("tables", help="reproduce a published table")
    p.add_argument("--example", required=True, choices=sorted(PRESETS))
    p.add_argument("--m-list")
    p.add_argument("--ref")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("check", help="report the exponent constraints for a config")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("moments")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--mu", type=float)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--y", required=True, help="comma-separated points in (-1, 1)")
    p.add_argument("--check", type=int, default=8, help="degrees compared with the oracle")
    p.add_argument("--out")
    p.set_defaults(func=cmd_moments)
    return parser


def _first_line(exc: Exception) -> str:
    text = str(exc)
    return text.splitlines()[0] if text else type(exc).__name__


def _one_line(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(x) for x in err.get("loc", ())) or "config"
        parts.append(f"{loc}: {err.get('msg', '')}")
    return "; ".join(parts).replace("\n", " ")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = load_config()
    configure(cfg.get("logging", {}).get("level", "INFO"))
    try:
        return args.func(args, cfg)
    except ValidationError as e:
        print(f"error: config: {_one_line(e)}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigurationError, FuncSyntaxError) as e:
        print(f"error: validation: {_first_line(e)}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"error: config: {_first_line(e)}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as e:
        print(f"error: domain: {_first_line(e)}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConvergenceError, SingularSystemError) as e:
        print(f"error: numeric: {_first_line(e)}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
