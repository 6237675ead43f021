# Config package
import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv

from prandtl.errors import ConfigurationError
from prandtl.kernels.moments import MomentOptions

_root = Path(__file__).resolve().parent.parent.parent
CONFIG_PATH = Path(__file__).resolve().parent / "config.yaml"


@lru_cache(maxsize=1)
def load_config() -> dict:
    # .env from the project root so PRANDTL_THREADS is visible
    load_dotenv(_root / ".env")
    with open(CONFIG_PATH, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def resolve_threads(cfg: Optional[dict] = None) -> int:
    cfg = cfg if cfg is not None else load_config()
    raw = os.environ.get("PRANDTL_THREADS")
    if raw is None or not raw.strip():
        raw = cfg.get("concurrency", {}).get("threads")
    if raw is None:
        return os.cpu_count() or 1
    try:
        threads = int(raw)
    except (TypeError, ValueError):
        raise ConfigurationError(f"PRANDTL_THREADS must be an integer, got {raw!r}")
    if threads < 1:
        raise ConfigurationError(f"thread count must be >= 1, got {threads}")
    return threads


def moment_options(cfg: Optional[dict] = None, threads: int = 1) -> MomentOptions:
    cfg = cfg if cfg is not None else load_config()
    m = cfg.get("moments", {})
    return MomentOptions(
        tolerance=float(m.get("tolerance", 1e-15)),
        node_margin=int(m.get("node_margin", 16)),
        block_size=int(m.get("block_size", 64)),
        threads=threads,
    )


def residual_factor(cfg: Optional[dict] = None) -> float:
    cfg = cfg if cfg is not None else load_config()
    value = float(cfg.get("solver", {}).get("residual_factor", 1e-10))
    if not value > 0.0:
        raise ConfigurationError(f"solver.residual_factor must be positive, got {value!r}")
    return value
