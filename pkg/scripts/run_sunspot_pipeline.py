#!/usr/bin/env python3
"""End-to-end run on the bundled monthly sunspot stand-in: decompose the
series (window 35), train the coarse-to-fine curriculum, and emit a 6-year
(72-month) closed-loop forecast.

    python scripts/run_sunspot_pipeline.py [output_dir]

Outputs land in runs/sunspot/ by default; see the forecast peak line on
stdout and forecast.json for the full record.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ssaforecast.cli import main  # noqa: E402

CONFIG = {
    "input_csv": str(ROOT / "data" / "sunspots_monthly.csv"),
    "time_column": "time",
    "value_column": "sunspots",
    "window": 35,
    "embedding": 5,
    "hidden_units": 10,
    "pc_step": 2,
    "stage_epochs": 600,
    "stage_lr": 0.05,
    "stage_momentum": 0.9,
    "patience": 200,
    "validation_fraction": 0.10,
    "seed": 0,
    "horizon": 72,
}


def run(output_dir: str) -> int:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    config_path = out / "run.json"
    config_path.write_text(json.dumps({**CONFIG, "output_dir": str(out)}, indent=2))
    for argv in (
        ["decompose", "--config", str(config_path)],
        ["train", "--config", str(config_path), "--mode", "curriculum"],
        ["predict", "--config", str(config_path), "--network", str(out / "network.json")],
    ):
        code = main(argv)
        if code != 0:
            return code
    print(f"artifacts in {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(run(sys.argv[1] if len(sys.argv) > 1 else "runs/sunspot"))
