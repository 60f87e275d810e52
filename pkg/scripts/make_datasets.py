#!/usr/bin/env python3
"""Regenerate the committed data files (deterministic; safe to re-run).

    python scripts/make_datasets.py

Writes:
    data/sunspots_monthly.csv        synthetic monthly sunspot stand-in,
                                     792 rows (1944.0 .. 2009.92)
    tests/fixtures/benchmark_two_sine.csv
                                     the two-sinusoid benchmark realization
                                     used by the comparison experiments
    tests/fixtures/tiny_series.csv   short low-noise series for fast
                                     command-level golden tests
"""

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ssaforecast.benchmark import synthetic_sunspot_series, two_sine_benchmark
from ssaforecast.jsonio import write_csv
from ssaforecast.rng import SplitMix64

ROOT = Path(__file__).resolve().parents[1]


def main() -> None:
    ts, vals = synthetic_sunspot_series(n_months=792, start_year=1944.0, seed=1944)
    write_csv(ROOT / "data" / "sunspots_monthly.csv", ["time", "sunspots"], zip(ts, vals))

    bench = two_sine_benchmark(n=600, seed=0)
    write_csv(
        ROOT / "tests" / "fixtures" / "benchmark_two_sine.csv",
        ["time", "value"],
        zip(np.arange(600.0), bench),
    )

    # short, lightly-noised sinusoid: converges quickly in golden runs
    n = 120
    t = np.arange(n, dtype=np.float64)
    noise = SplitMix64(5, stream=7).normals(n)
    tiny = np.sin(2.0 * math.pi * t / 12.0 + 0.3) + 0.05 * noise
    write_csv(ROOT / "tests" / "fixtures" / "tiny_series.csv", ["time", "value"], zip(t, tiny))

    for rel in (
        "data/sunspots_monthly.csv",
        "tests/fixtures/benchmark_two_sine.csv",
        "tests/fixtures/tiny_series.csv",
    ):
        path = ROOT / rel
        rows = len(path.read_text().splitlines()) - 1
        print(f"wrote {rel} ({rows} rows)")


if __name__ == "__main__":
    main()
