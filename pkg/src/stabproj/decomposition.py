"""Stable/unstable reconstruction on the frequency axis and the verdict."""
from dataclasses import dataclass

import numpy as np

from scipy.signal import find_peaks

from .disc import DiscSamples, ErrorEstimate, FourierCoefficients, interpolate_disc
from .errors import CoefficientMismatch
from .frf import FullAxisFrf, db

DEFAULT_THRESHOLD_DB = 20.0


@dataclass(frozen=True)
class Decomposition:
    """Filtered response split into stable and unstable parts (Ohm)."""

    filtered: FullAxisFrf
    stable: FullAxisFrf
    unstable: FullAxisFrf
    error: ErrorEstimate
    coefficients: FourierCoefficients

    @property
    def freqs(self):
        return self.filtered.freqs


@dataclass(frozen=True)
class StabilityReport:
    verdict: str
    margin_db: float
    peak_frequency: float
    threshold_db: float
    unstable_peak_db: float
    error_floor_db: float
    mode: str = "global"

    @property
    def unstable(self):
        return self.verdict == "unstable"


def _part_on_grid(coeffs, keep_negative):
    n = coeffs.n_fft
    c = np.array(coeffs.c)
    half = n // 2
    if keep_negative:
        c[half:] = 0
    else:
        c[:half] = 0
    # values[n] = sum_k c_k exp(j k theta_n)
    return np.fft.ifft(np.fft.ifftshift(c)) * n


def _grid_samples(values, alpha, theta_lo, theta_hi):
    """Uniform-grid values as :class:`DiscSamples`, padded around the needed arc."""
    n = values.size
    dt = 2 * np.pi / n
    lo = int(np.floor(theta_lo / dt)) - 3
    hi = int(np.ceil(theta_hi / dt)) + 4
    idx = np.arange(lo, hi)
    return DiscSamples(idx * dt, values[idx % n], np.zeros(idx.size), alpha)


def reconstruct_parts(coeffs, frf, mmap, error=None, method="linear"):
    """Evaluate the stable and unstable parts at the samples of ``frf``.

    ``S(z) = sum_{k>=0} c_k z^k`` and ``U(z) = sum_{k<0} c_k z^k`` are
    obtained on the uniform angle grid by two inverse FFTs, interpolated at
    each sample angle and weighted by ``(z - 1)/(2 sqrt(pi alpha))``, which
    turns ``z^k`` back into ``B_k(jw)``.

    Parameters
    ----------
    coeffs : FourierCoefficients
    frf : FullAxisFrf
        The filtered response the coefficients were computed from.
    mmap : MoebiusMap
    error : ErrorEstimate, optional
        Carried into the result.
    method : {"linear", "pade"}
        Interpolation from the uniform grid.
    """
    if not np.isclose(coeffs.alpha, mmap.alpha, rtol=1e-12, atol=0):
        raise CoefficientMismatch(
            f"coefficients use alpha={coeffs.alpha}, map has alpha={mmap.alpha}")
    theta = mmap.theta(frf.freqs)
    z = np.exp(1j * theta)
    weight = mmap.to_axis_weight(z)
    parts = []
    for negative in (False, True):
        grid_vals = _part_on_grid(coeffs, negative)
        src = _grid_samples(grid_vals, mmap.alpha, theta.min(), theta.max())
        parts.append(weight * interpolate_disc(src, theta, method))
    if error is None:
        error = ErrorEstimate(np.zeros(0), np.zeros(0))
    return Decomposition(
        filtered=frf,
        stable=frf.with_values(parts[0], label="stable"),
        unstable=frf.with_values(parts[1], label="unstable"),
        error=error,
        coefficients=coeffs,
    )


def verdict(dec, threshold_db=DEFAULT_THRESHOLD_DB, mode="global"):
    """Compare the unstable part with the interpolation-error floor.

    ``margin_db`` is the peak of ``|unstable|`` in dB minus the global maximum
    of the error estimate in dB.  The response is declared unstable only when
    the margin strictly exceeds ``threshold_db``.  ``mode="pointwise"``
    instead takes the largest difference between the unstable curve and the
    local error level, for diagnostics.
    """
    u = np.abs(dec.unstable.values)
    f = dec.unstable.freqs
    i = int(np.argmax(u))
    peak_db = float(db(u[i]))
    floor_db = dec.error.global_max_db
    if mode == "global":
        margin = peak_db - floor_db
        peak_f = abs(float(f[i]))
    elif mode == "pointwise":
        local = dec.error.at(np.abs(f))
        diff = db(u) - db(local)
        j = int(np.nanargmax(diff))
        margin = float(diff[j])
        peak_f = abs(float(f[j]))
    else:
        raise ValueError(f"unknown verdict mode {mode!r}")
    return StabilityReport(
        verdict="unstable" if margin > threshold_db else "stable",
        margin_db=float(margin),
        peak_frequency=peak_f,
        threshold_db=float(threshold_db),
        unstable_peak_db=peak_db,
        error_floor_db=floor_db,
        mode=mode,
    )


def unstable_peaks(dec, level_db, min_separation=0.0):
    """Positive frequencies of local maxima of ``|unstable|`` above ``level_db``."""
    pos = dec.unstable.freqs >= 0
    f = dec.unstable.freqs[pos]
    u = db(dec.unstable.values[pos])
    u = np.where(np.isfinite(u), u, -400.0)
    idx, _ = find_peaks(u, height=level_db)
    if idx.size and min_separation > 0:
        keep = [idx[0]]
        for j in idx[1:]:
            if f[j] - f[keep[-1]] < min_separation:
                if u[j] > u[keep[-1]]:
                    keep[-1] = j
            else:
                keep.append(j)
        idx = np.array(keep)
    return f[idx], u[idx]
