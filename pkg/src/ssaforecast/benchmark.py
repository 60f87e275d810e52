"""Synthetic series generators for experiments and tests."""

from __future__ import annotations

import math

import numpy as np

from .rng import SplitMix64

# distinct generator streams so a shared seed never reuses the same deviates
# for noise and for weight initialization
_NOISE_STREAM = 7
_SUNSPOT_STREAM = 11


def two_sine_benchmark(
    n: int = 600,
    seed: int = 0,
    noise_sigma: float = 0.3,
    periods: tuple[float, float] = (11.0, 5.5),
    amplitudes: tuple[float, float] = (1.0, 0.4),
) -> np.ndarray:
    """Two sinusoids (fixed phases) plus white Gaussian noise.

    The short period is half the long one, mimicking a fundamental plus
    harmonic buried in noise; the window sizes used in experiments cover
    several fundamental cycles.
    """
    t = np.arange(n, dtype=np.float64)
    clean = amplitudes[0] * np.sin(2.0 * math.pi * t / periods[0] + 0.7) + amplitudes[
        1
    ] * np.sin(2.0 * math.pi * t / periods[1] + 2.3)
    noise = SplitMix64(seed, stream=_NOISE_STREAM).normals(n)
    return clean + noise_sigma * noise


def synthetic_sunspot_series(
    n_months: int = 792,
    start_year: float = 1944.0,
    seed: int = 1944,
) -> tuple[np.ndarray, np.ndarray]:
    """Monthly sunspot-number stand-in: asymmetric ~11-year activity cycles
    with varying amplitude, non-negative, in realistic units.

    This is NOT observational data; swap in a real archive export for
    scientific use.  Returns (timestamps as year fractions, values).
    """
    rng = SplitMix64(seed, stream=_SUNSPOT_STREAM)
    months = np.arange(n_months, dtype=np.float64)
    timestamps = start_year + months / 12.0
    values = np.zeros(n_months)
    cycle_start = 0.0
    while cycle_start < n_months:
        period = 132.0 + 12.0 * (rng.uniform() - 0.5) * 2.0  # 10..12 years, in months
        amplitude = 90.0 + 90.0 * rng.uniform()  # peak 90..180
        rise_fraction = 0.35 + 0.1 * rng.uniform()  # fast rise, slow decline
        phase = (months - cycle_start) / period
        in_cycle = (phase >= 0.0) & (phase < 1.0)
        shape = np.zeros(n_months)
        rising = in_cycle & (phase < rise_fraction)
        falling = in_cycle & (phase >= rise_fraction)
        shape[rising] = np.sin(0.5 * math.pi * phase[rising] / rise_fraction) ** 2
        shape[falling] = (
            np.cos(0.5 * math.pi * (phase[falling] - rise_fraction) / (1.0 - rise_fraction)) ** 2
        )
        values += amplitude * shape
        cycle_start += period
    noise = np.array([rng.normal() for _ in range(n_months)])
    values = values * (1.0 + 0.1 * noise) + 4.0 * np.abs(noise)
    return timestamps, np.maximum(values, 0.0)
