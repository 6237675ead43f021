"""
Batch experiment: run every built-in example through a convergence study and
write one CSV per table to logs/, plus a trace line per row.
"""

import sys
from pathlib import Path

# Project root
ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from prandtl.config import load_config, moment_options, resolve_threads, residual_factor
from prandtl.errors import PrandtlError
from prandtl.logging.logger import configure, ensure_log_dir, log_report
from prandtl.models.presets import PRESETS, get_preset
from prandtl.solver.study import convergence_study


def run_one(name: str, cfg: dict, log_dir: Path) -> Path:
    preset = get_preset(name)
    spec = preset.spec
    report = convergence_study(spec, preset.m_list, moment_options=moment_options(cfg, 1),
                               threads=resolve_threads(cfg),
                               default_m_ref=int(cfg["reference"]["m_ref"]),
                               residual_factor=residual_factor(cfg))
    out_path = log_dir / f"table_{name}.csv"
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(report.to_csv())
    log_report(str(log_dir), cfg["logging"]["trace_file"], spec, report)
    return out_path


def main():
    cfg = load_config()
    configure(cfg["logging"]["level"])
    log_dir = ensure_log_dir(str(ROOT / cfg["logging"]["log_dir"]))
    names = sys.argv[1:] or list(PRESETS)
    failed = 0
    for name in names:
        try:
            path = run_one(name, cfg, log_dir)
            print(f"{name}: wrote {path.relative_to(ROOT)}")
        except PrandtlError as e:
            failed += 1
            print(f"{name}: error: {e}")

    print("Batch done. Run experiments/analyze.py to compare with the published tables.")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
