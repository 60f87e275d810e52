#!/usr/bin/env python3
"""Regenerate the committed golden files for the command-level byte-exact
tests (run after any intentional change to training numerics or file
formats; goldens are platform-build sensitive through libm/BLAS).

    python scripts/regen_goldens.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ssaforecast.cli import main  # noqa: E402

GOLDEN_DIR = ROOT / "tests" / "fixtures" / "golden"
GOLDEN_FILES = ("summary.json", "network.json", "trace.csv", "forecast.csv", "forecast.json")


def run() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        shutil.copy(ROOT / "tests" / "fixtures" / "tiny_series.csv", tmp / "tiny_series.csv")
        shutil.copy(ROOT / "tests" / "fixtures" / "golden_config.json", tmp / "golden_config.json")
        import os

        cwd = os.getcwd()
        os.chdir(tmp)
        try:
            assert main(["train", "--config", "golden_config.json"]) == 0
            assert main(["predict", "--config", "golden_config.json", "--network", "out/network.json"]) == 0
        finally:
            os.chdir(cwd)
        GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
        for name in GOLDEN_FILES:
            shutil.copy(tmp / "out" / name, GOLDEN_DIR / name)
            print(f"wrote tests/fixtures/golden/{name}")


if __name__ == "__main__":
    run()
