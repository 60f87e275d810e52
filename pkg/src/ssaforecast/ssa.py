"""Spectral decomposition of a standardized series via the lagged-correlation
eigenproblem, and reassembly of filtered versions.

Index conventions (0-based arrays, series x[0..N-1], window size M):

* lag correlations   c[j] = sum(x[i] * x[i+j] for i in 0..N-j-1) / (N - j)
* principal comps    a[i, k] = dot(x[i:i+M], E[:, k]),  i = 0..N-M
* reconstructed comp rc[t, k] = conv_full(a[:, k], E[:, k])[t] / w[t]
  with w[t] = min(t+1, M, N-t): full-width averaging (1/M) in the interior,
  truncated sums with matching normalization near both edges, which is the
  unique choice making sum-of-all-components reproduce the series exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadComponentCount,
    ConvergenceFailure,
    DimensionMismatch,
    WindowTooLarge,
)
from .series import _as_values

# hand-rolled Jacobi below this size; LAPACK (numpy.linalg.eigh) above it,
# where cyclic sweeps in Python are too slow for the property-test scale
JACOBI_MAX_SIZE = 64
_JACOBI_MAX_SWEEPS = 100

ORTHONORMALITY_TOL = 1e-10
RESIDUAL_TOL = 1e-9
TRACE_RTOL = 1e-8
COMPLETENESS_TOL = 1e-8
LOG_EIGENVALUE_FLOOR = 1e-15


@dataclass(frozen=True)
class ToeplitzCorrelation:
    """Lag correlations c_0..c_{M-1}; the induced matrix has c_|j-k| at (j,k)."""

    lags: np.ndarray

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=np.float64)
        object.__setattr__(self, "lags", lags)
        if lags.ndim != 1 or lags.size < 1:
            raise ValueError("lags must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(lags)):
            raise ValueError("lags must be finite")
        if lags[0] <= 0.0:
            raise ValueError("zero-lag correlation must be positive")

    @property
    def window(self) -> int:
        return self.lags.size

    def matrix(self) -> np.ndarray:
        m = self.window
        idx = np.abs(np.arange(m)[:, None] - np.arange(m)[None, :])
        return self.lags[idx]


@dataclass(frozen=True)
class SingularSpectrum:
    """Eigenvalues in descending order with the matching orthonormal
    eigenvector columns."""

    eigenvalues: np.ndarray  # (M,)
    eigenvectors: np.ndarray  # (M, M), column k pairs with eigenvalues[k]

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", np.asarray(self.eigenvalues, dtype=np.float64))
        object.__setattr__(self, "eigenvectors", np.asarray(self.eigenvectors, dtype=np.float64))

    @property
    def window(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True)
class ComponentSet:
    """Principal components (columns of pcs) and reconstructed components
    (columns of rcs) for one decomposition."""

    pcs: np.ndarray  # (N - M + 1, M)
    rcs: np.ndarray  # (N, M)
    n: int
    window: int
    completeness_error: float  # max |sum_k rc_k - series|


def lag_correlation(series, window: int) -> ToeplitzCorrelation:
    """Lagged correlations of a standardized series (c_0 = 1 by construction)."""
    x = _as_values(series)
    n = x.size
    if window < 1:
        raise ValueError("window must be at least 1")
    if window > n // 2:
        raise WindowTooLarge(f"window {window} exceeds half the series length {n}")
    if window > n // 3:
        warnings.warn(
            f"window {window} exceeds a third of the series length {n}; "
            "lag estimates will be noisy",
            stacklevel=2,
        )
    lags = np.empty(window)
    for j in range(window):
        lags[j] = np.dot(x[: n - j], x[j:]) / (n - j)
    return ToeplitzCorrelation(lags)


def _jacobi_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations on a symmetric matrix.

    Sweeps until the off-diagonal Frobenius norm falls below 1e-12 times the
    Frobenius norm of the input, or fails after the sweep cap.
    """
    a = matrix.astype(np.float64).copy()
    m = a.shape[0]
    v = np.eye(m)
    threshold = 1e-12 * np.linalg.norm(matrix)
    if m == 1:
        return np.diag(a).copy(), v
    off_diag = ~np.eye(m, dtype=bool)
    for _ in range(_JACOBI_MAX_SWEEPS):
        if np.linalg.norm(a[off_diag]) < threshold:
            return np.diag(a).copy(), v
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                akp = a[:, p].copy()
                akq = a[:, q].copy()
                mask = np.ones(m, dtype=bool)
                mask[[p, q]] = False
                a[mask, p] = c * akp[mask] - s * akq[mask]
                a[p, mask] = a[mask, p]
                a[mask, q] = s * akp[mask] + c * akq[mask]
                a[q, mask] = a[mask, q]
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    raise ConvergenceFailure(
        f"Jacobi eigensolver did not converge in {_JACOBI_MAX_SWEEPS} sweeps"
    )


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its first largest-magnitude entry is positive."""
    out = vectors.copy()
    for k in range(out.shape[1]):
        lead = np.argmax(np.abs(out[:, k]))
        if out[lead, k] < 0.0:
            out[:, k] = -out[:, k]
    return out


def eigendecompose(corr: ToeplitzCorrelation) -> SingularSpectrum:
    """Orthonormal eigenbasis of the correlation matrix, eigenvalues sorted
    descending (stable on ties), sign-normalized columns."""
    c = corr.matrix()
    m = corr.window
    if m <= JACOBI_MAX_SIZE:
        eigvals, eigvecs = _jacobi_eigh(c)
    else:
        eigvals, eigvecs = np.linalg.eigh(c)
    order = np.argsort(-eigvals, kind="stable")
    eigvals = eigvals[order]
    eigvecs = _fix_signs(eigvecs[:, order])

    gram_err = np.max(np.abs(eigvecs.T @ eigvecs - np.eye(m)))
    if gram_err > ORTHONORMALITY_TOL:
        raise ConvergenceFailure(f"eigenvectors not orthonormal (error {gram_err:.3e})")
    residual = np.max(np.abs(c @ eigvecs - eigvecs * eigvals[None, :]))
    if residual > RESIDUAL_TOL * max(1.0, abs(eigvals[0])):
        raise ConvergenceFailure(f"eigenpair residual too large ({residual:.3e})")
    trace_err = abs(eigvals.sum() - np.trace(c))
    if trace_err > TRACE_RTOL * max(1.0, abs(np.trace(c))):
        raise ConvergenceFailure(f"eigenvalue sum deviates from trace by {trace_err:.3e}")
    return SingularSpectrum(eigvals, eigvecs)


def principal_components(series, spectrum: SingularSpectrum) -> np.ndarray:
    """Project every length-M window onto the eigenbasis.

    Returns an (N - M + 1, M) matrix; column k is the k-th principal
    component series.
    """
    x = _as_values(series)
    m = spectrum.window
    if x.size < m:
        raise DimensionMismatch(f"series length {x.size} shorter than window {m}")
    windows = np.lib.stride_tricks.sliding_window_view(x, m)
    return windows @ spectrum.eigenvectors


def _averaging_weights(n: int, window: int) -> np.ndarray:
    """Number of retained terms at each series position: min(t+1, M, N-t)."""
    t = np.arange(n)
    return np.minimum(np.minimum(t + 1, window), n - t).astype(np.float64)


def reconstruct_component(pc_k, eigvec_k, n: int, window: int) -> np.ndarray:
    """Map one principal component back to series length by averaging its
    contributions along each diagonal of the trajectory matrix."""
    pc = np.asarray(pc_k, dtype=np.float64)
    ev = np.asarray(eigvec_k, dtype=np.float64)
    if pc.size != n - window + 1:
        raise DimensionMismatch(
            f"principal component has length {pc.size}, expected {n - window + 1}"
        )
    if ev.size != window:
        raise DimensionMismatch(f"eigenvector has length {ev.size}, expected {window}")
    return np.convolve(pc, ev, mode="full") / _averaging_weights(n, window)


def _reconstruct_all(pcs: np.ndarray, eigvecs: np.ndarray, n: int) -> np.ndarray:
    """All reconstructed components at once: per-column full convolution of
    pcs with eigvecs, FFT-batched when the window is large."""
    window = eigvecs.shape[0]
    weights = _averaging_weights(n, window)
    if window <= JACOBI_MAX_SIZE:
        out = np.empty((n, window))
        for k in range(window):
            out[:, k] = np.convolve(pcs[:, k], eigvecs[:, k], mode="full")
    else:
        size = 1 << (n - 1).bit_length()
        spec = np.fft.rfft(pcs, size, axis=0) * np.fft.rfft(eigvecs, size, axis=0)
        out = np.fft.irfft(spec, size, axis=0)[:n]
    return out / weights[:, None]


def decompose(series, window: int) -> tuple[ToeplitzCorrelation, SingularSpectrum, ComponentSet]:
    """Full pipeline: lag correlations, eigenbasis, principal and
    reconstructed components, with the completeness identity checked."""
    x = _as_values(series)
    corr = lag_correlation(x, window)
    spectrum = eigendecompose(corr)
    pcs = principal_components(x, spectrum)
    rcs = _reconstruct_all(pcs, spectrum.eigenvectors, x.size)
    err = float(np.max(np.abs(rcs.sum(axis=1) - x)))
    if err > COMPLETENESS_TOL:
        raise ConvergenceFailure(f"component sum fails to reproduce the series (error {err:.3e})")
    comps = ComponentSet(pcs=pcs, rcs=rcs, n=x.size, window=window, completeness_error=err)
    return corr, spectrum, comps


def partial_reconstruction(components: ComponentSet, count: int) -> np.ndarray:
    """Sum of the first `count` reconstructed components (eigenvalue order)."""
    if not 1 <= count <= components.window:
        raise BadComponentCount(
            f"component count must lie in [1, {components.window}], got {count}"
        )
    return components.rcs[:, :count].sum(axis=1)


@dataclass(frozen=True)
class SpectrumPlotPoint:
    rank: int  # 1-based, descending-eigenvalue order
    log10_eigenvalue: float
    clamped: bool


def singular_spectrum_plot_data(spectrum: SingularSpectrum) -> list[SpectrumPlotPoint]:
    """log10 eigenvalues in descending order; non-positive (or sub-floor)
    entries are clamped to 1e-15 and flagged."""
    points = []
    for k, lam in enumerate(spectrum.eigenvalues, start=1):
        clamped = lam < LOG_EIGENVALUE_FLOOR
        value = math.log10(max(lam, LOG_EIGENVALUE_FLOOR))
        points.append(SpectrumPlotPoint(rank=k, log10_eigenvalue=value, clamped=bool(clamped)))
    return points
