"""Series ingestion, standardization, and supervised dataset construction."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadFraction,
    EmbeddingTooLarge,
    NonMonotonicTime,
    NonUniformSpacing,
    ParseError,
    ZeroVariance,
)
from .rng import SplitMix64

# relative tolerance on step uniformity of the time axis
SPACING_RTOL = 1e-9


def _as_values(series) -> np.ndarray:
    """Accept a StandardizedSeries or a bare 1-D float array."""
    values = getattr(series, "values", series)
    return np.asarray(values, dtype=np.float64)


@dataclass(frozen=True)
class RawSeries:
    """Uniformly sampled scalar observations in original units."""

    timestamps: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=np.float64)
        vals = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", vals)
        if ts.ndim != 1 or vals.ndim != 1 or ts.size != vals.size:
            raise ValueError("timestamps and values must be 1-D sequences of equal length")
        if ts.size < 2:
            raise ValueError("need at least two samples")
        if not np.all(np.isfinite(ts)) or not np.all(np.isfinite(vals)):
            raise ValueError("timestamps and values must be finite")
        steps = np.diff(ts)
        bad = np.nonzero(steps <= 0.0)[0]
        if bad.size:
            raise NonMonotonicTime(int(bad[0]) + 1)
        step = (ts[-1] - ts[0]) / (ts.size - 1)
        if np.max(np.abs(steps - step)) > SPACING_RTOL * abs(step):
            raise NonUniformSpacing(
                f"time axis is not uniformly spaced within {SPACING_RTOL:g} relative tolerance"
            )

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def step(self) -> float:
        return float((self.timestamps[-1] - self.timestamps[0]) / (self.n - 1))


@dataclass(frozen=True)
class StandardizedSeries:
    """Zero-mean, unit-variance values plus the affine map back to original
    units: original = scale * value + mean."""

    values: np.ndarray
    mean: float
    scale: float

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))

    @property
    def n(self) -> int:
        return self.values.size


def load_csv(path, value_column: str, time_column: str) -> RawSeries:
    """Read a comma-delimited UTF-8 file with a header row.

    Rows are kept in file order; both named columns must parse as finite
    reals and timestamps must be strictly increasing (duplicates rejected).
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError(0, value_column, "file has no header row")
        for col in (time_column, value_column):
            if col not in reader.fieldnames:
                raise ParseError(0, col, "column missing from header")
        times: list[float] = []
        values: list[float] = []
        for i, record in enumerate(reader, start=1):
            for col, out in ((time_column, times), (value_column, values)):
                cell = record.get(col)
                if cell is None:
                    raise ParseError(i, col, "missing cell")
                try:
                    x = float(cell)
                except ValueError:
                    raise ParseError(i, col) from None
                if not math.isfinite(x):
                    raise ParseError(i, col)
                out.append(x)
            if len(times) >= 2 and times[-1] <= times[-2]:
                raise NonMonotonicTime(i)
    return RawSeries(np.array(times), np.array(values))


def standardize(raw) -> StandardizedSeries:
    """Shift to zero mean and scale to unit population variance (divide by N,
    so the zero-lag autocorrelation of the output is exactly 1)."""
    values = raw.values if isinstance(raw, RawSeries) else _as_values(raw)
    if values.size < 2:
        raise ValueError("need at least two samples")
    mean = float(np.mean(values))
    var = float(np.mean((values - mean) ** 2))
    if var <= 0.0:
        raise ZeroVariance("series is constant; cannot standardize")
    scale = math.sqrt(var)
    return StandardizedSeries((values - mean) / scale, mean, scale)


def destandardize(values, mean: float, scale: float) -> np.ndarray:
    """Inverse of standardize: y = scale * x + mean, elementwise."""
    if scale <= 0.0:
        raise ValueError("scale must be positive")
    arr = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("values must be finite")
    return scale * arr + mean


@dataclass(frozen=True)
class EmbeddingDataset:
    """Supervised pairs: each input is m consecutive samples (oldest first),
    the target is the sample immediately after the window."""

    inputs: np.ndarray  # (count, m)
    targets: np.ndarray  # (count,)
    m: int

    @property
    def count(self) -> int:
        return self.targets.size

    def subset(self, indices: np.ndarray) -> "EmbeddingDataset":
        return EmbeddingDataset(self.inputs[indices], self.targets[indices], self.m)


def build_embedding(series, m: int) -> EmbeddingDataset:
    """Slide an m-wide window over the series; N - m pairs."""
    values = _as_values(series)
    n = values.size
    if m < 1:
        raise ValueError("embedding dimension must be at least 1")
    if m >= n:
        raise EmbeddingTooLarge(f"embedding dimension {m} needs a series longer than {n}")
    windows = np.lib.stride_tricks.sliding_window_view(values, m)[:-1]
    return EmbeddingDataset(np.array(windows), values[m:].copy(), m)


@dataclass(frozen=True)
class SplitDataset:
    """Disjoint train/validation partition of an embedding dataset."""

    train: EmbeddingDataset
    validation: EmbeddingDataset
    seed: int
    fraction: float
    train_indices: np.ndarray
    validation_indices: np.ndarray


def split_validation(dataset: EmbeddingDataset, fraction: float, seed: int) -> SplitDataset:
    """Hold out round(fraction * count) pairs, chosen uniformly at random by
    the seeded generator (see rng module for the exact algorithm).

    The validation side always keeps at least one pair and leaves at least
    one pair for training.
    """
    if not 0.0 < fraction < 1.0:
        raise BadFraction(f"fraction must lie in (0, 1), got {fraction}")
    n = dataset.count
    if n < 2:
        raise ValueError("need at least two pairs to split")
    k = int(math.floor(fraction * n + 0.5))
    k = min(max(k, 1), n - 1)
    perm = SplitMix64(seed).permutation(n)
    val_idx = np.sort(perm[:k])
    train_idx = np.sort(perm[k:])
    return SplitDataset(
        train=dataset.subset(train_idx),
        validation=dataset.subset(val_idx),
        seed=seed,
        fraction=fraction,
        train_indices=train_idx,
        validation_indices=val_idx,
    )
