"""
Analysis: read the table CSVs written by run_batch.py and compare them with
the published columns.
Metrics per example: mean EOC, mean nu, and the ratios err/err_pub and
cond/cond_pub row by row.
"""

import sys
from pathlib import Path

import pandas as pd

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from prandtl.models.presets import PRESETS, get_preset

LOG_DIR = ROOT / "logs"


def load_table(name: str) -> pd.DataFrame:
    path = LOG_DIR / f"table_{name}.csv"
    if not path.exists():
        return pd.DataFrame()
    return pd.read_csv(path)


def compare(name: str, df: pd.DataFrame) -> pd.DataFrame:
    published_column = get_preset(name).published
    if published_column is None:
        return df
    published = pd.DataFrame(list(published_column.rows), columns=["m", "cond_pub", "err_pub"])
    merged = df.merge(published, on="m", how="left")
    merged["err_ratio"] = merged["err"] / merged["err_pub"]
    merged["cond_ratio"] = merged["cond_inf"] / merged["cond_pub"]
    return merged


def main():
    summary = []
    for name in PRESETS:
        df = load_table(name)
        if df.empty:
            continue
        merged = compare(name, df)
        preset = get_preset(name)
        published_column = preset.published
        summary.append({
            "example": name,
            "rows": len(df),
            "mean_EOC": df["EOC"].mean(),
            "mean_nu": df["nu"].mean(),
            "pub_mean_EOC": published_column.mean_eoc if published_column else None,
            "pub_nu": published_column.nu if published_column else None,
            "smoothness": preset.smoothness,
            "max_err_ratio": merged["err_ratio"].abs().max() if "err_ratio" in merged else None,
        })
        print(f"\n{name}:")
        print(merged.to_string(index=False))

    if not summary:
        print("No tables found in logs/. Run experiments/run_batch.py first.")
        sys.exit(0)
    print("\nSummary:")
    print(pd.DataFrame(summary).to_string(index=False))


if __name__ == "__main__":
    main()
