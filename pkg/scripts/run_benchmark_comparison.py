#!/usr/bin/env python3
"""Paired curriculum-vs-baseline experiment on the two-sinusoid benchmark
(10 seeds, equal epoch budgets, 50-step closed-loop holdout), plus the
error-vs-component-count curve.

    python scripts/run_benchmark_comparison.py [output_dir]
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ssaforecast.cli import main  # noqa: E402

CONFIG = {
    "input_csv": str(ROOT / "tests" / "fixtures" / "benchmark_two_sine.csv"),
    "window": 35,
    "embedding": 5,
    "hidden_units": 10,
    "pc_step": 2,
    "stage_epochs": 600,
    "stage_lr": 0.05,
    "stage_momentum": 0.9,
    "patience": 0,
    "validation_fraction": 0.10,
    "seed": 0,
    "seeds": list(range(10)),
    "compare_horizon": 50,
}


def run(output_dir: str) -> int:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    config_path = out / "run.json"
    config_path.write_text(json.dumps({**CONFIG, "output_dir": str(out)}, indent=2))
    code = main(["compare", "--config", str(config_path)])
    if code == 0:
        print(f"artifacts in {out}/ (comparison.json, curve.csv)")
    return code


if __name__ == "__main__":
    sys.exit(run(sys.argv[1] if len(sys.argv) > 1 else "runs/benchmark"))
