"""Moebius map to the unit circle, uniform resampling, FFT and error floor.

With ``z = (s - alpha)/(s + alpha)`` the imaginary axis is wrapped once
around the unit circle: DC lands on ``z = -1``, positive frequencies on the
upper half (``theta`` in ``(0, pi)``) and ``+-inf`` on ``z = 1``.  The
weighted transform::

    F(z) = sqrt(pi alpha) * 2/(z - 1) * Z(alpha (1 + z)/(1 - z))

is an isometry from ``L2(jR)`` onto ``L2`` of the circle (with measure
``dtheta/2pi``) that sends the orthonormal basis
``B_k(s) = -sqrt(alpha/pi) (s - alpha)^k / (s + alpha)^(k+1)`` to ``z^k``.
Projecting on the stable and unstable bases is therefore a Fourier series.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientGrid
from .frf import FullAxisFrf, db

METHODS = ("linear", "pade")
MIN_ERROR_SAMPLES = 16


@dataclass(frozen=True)
class MoebiusMap:
    """Scaling constant ``alpha`` (rad/s) of the Moebius transform."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or a <= 0:
            raise ValueError(f"alpha must be finite and positive, got {self.alpha}")
        object.__setattr__(self, "alpha", a)

    @classmethod
    def for_fmax(cls, f_max):
        """Map that sends ``f_max`` to ``exp(j pi/4)``."""
        return cls(2 * np.pi * f_max * (np.sqrt(2) - 1))

    def z(self, freqs):
        """Point on the unit circle for each frequency in Hz."""
        s = 2j * np.pi * np.asarray(freqs, dtype=float)
        return (s - self.alpha) / (s + self.alpha)

    def theta(self, freqs):
        """Angle in ``[0, 2 pi)``; monotone in frequency, DC at ``pi``."""
        w = 2 * np.pi * np.asarray(freqs, dtype=float)
        # arg((jw - a)/(jw + a)) = pi - 2 atan(w/a), no wrap-around issues
        return np.pi - 2 * np.arctan(w / self.alpha)

    def freq(self, theta):
        """Inverse of :meth:`theta`, in Hz."""
        return self.alpha * np.tan((np.pi - np.asarray(theta)) / 2) / (2 * np.pi)

    def to_disc_weight(self, z):
        """Factor ``sqrt(pi alpha) 2/(z - 1)`` applied to axis values."""
        return np.sqrt(np.pi * self.alpha) * 2 / (z - 1)

    def to_axis_weight(self, z):
        """Factor ``(z - 1)/(2 sqrt(pi alpha))`` bringing disc values back to Ohm."""
        return (z - 1) / (2 * np.sqrt(np.pi * self.alpha))

    def s_from_z(self, z):
        return self.alpha * (1 + z) / (1 - z)

    def z_from_s(self, s):
        return (s - self.alpha) / (s + self.alpha)


@dataclass(frozen=True)
class DiscSamples:
    """Moebius-transformed samples sorted by increasing ``theta``.

    ``dc_gap`` marks data that does not reach DC (bandpass case): the arc
    between the lowest positive and negative frequencies is then zero-filled
    instead of interpolated across.
    """

    theta: np.ndarray
    values: np.ndarray
    freqs: np.ndarray
    alpha: float
    dc_gap: bool = False

    def __len__(self):
        return self.theta.size

    @property
    def z(self):
        return np.exp(1j * self.theta)

    @property
    def periodic(self):
        """True when the samples wrap the whole circle.

        That is the case when the gap across ``theta = 0`` is no wider than
        twice the widest gap between neighbouring samples.  Band-limited
        axis data never qualifies: the arc beyond ``f_max`` is a wide gap.
        """
        t = self.theta
        if self.dc_gap or t.size < 3:
            return False
        wrap = 2 * np.pi - t[-1] + t[0]
        return bool(wrap <= 2 * np.max(np.diff(t)))

    def segments(self):
        """Index ranges ``(start, stop)`` of arcs that are interpolated over."""
        n = self.theta.size
        if not self.dc_gap:
            return [(0, n)]
        # positive frequencies come first (theta < pi)
        cut = int(np.searchsorted(self.theta, np.pi))
        return [seg for seg in ((0, cut), (cut, n)) if seg[1] > seg[0]]


@dataclass(frozen=True)
class UniformDiscGrid:
    """Disc function on ``theta_n = 2 pi n / n_fft``."""

    values: np.ndarray
    alpha: float

    @property
    def n_fft(self):
        return self.values.size

    @property
    def theta(self):
        return 2 * np.pi * np.arange(self.n_fft) / self.n_fft


@dataclass(frozen=True)
class FourierCoefficients:
    """Two-sided Fourier coefficients ``c_k``, ``k`` in ``[-n/2, n/2)``."""

    c: np.ndarray
    alpha: float

    @property
    def n_fft(self):
        return self.c.size

    @property
    def k(self):
        n = self.c.size
        return np.arange(-(n // 2), n - n // 2)

    def __getitem__(self, k):
        """Coefficient for signed index ``k``."""
        return self.c[np.asarray(k) + self.c.size // 2]

    def negative(self, m_max=None):
        """``c_{-1}, c_{-2}, ..., c_{-m_max}``."""
        half = self.c.size // 2
        m_max = half if m_max is None else min(m_max, half)
        return self.c[half - 1::-1][:m_max]

    def energy(self):
        """``(sum over k >= 0, sum over k < 0)`` of ``|c_k|^2``."""
        p = np.abs(self.c) ** 2
        half = self.c.size // 2
        return float(np.sum(p[half:])), float(np.sum(p[:half]))


@dataclass(frozen=True)
class ErrorEstimate:
    """Even/odd interpolation error in Ohm at the odd-sample frequencies.

    ``leakage`` is a constant floor for what the filter lets through outside
    the sampled band; it enters the global maximum but not the pointwise curve.
    """

    freqs: np.ndarray
    error: np.ndarray
    leakage: float = 0.0

    @property
    def global_max(self):
        return float(max(np.max(self.error, initial=0.0), self.leakage))

    @property
    def global_max_db(self):
        return float(db(self.global_max))

    def at(self, freqs):
        """Error level interpolated in frequency (nearest-neighbour hold at ends)."""
        order = np.argsort(self.freqs)
        return np.interp(freqs, self.freqs[order], self.error[order])


def default_n_fft(n_samples):
    """Smallest power of two that is at least ``8 * n_samples``."""
    return 1 << int(np.ceil(np.log2(max(8 * n_samples, 16))))


def to_disc(frf, mmap, dc_gap=None):
    """Transform a filtered full-axis response to the unit circle.

    Each sample at ``jw`` becomes ``(theta, F)`` with
    ``F = sqrt(pi alpha) 2/(z - 1) Z(jw)``.  Samples are returned sorted by
    ``theta`` (highest positive frequency first).
    """
    if not isinstance(frf, FullAxisFrf):
        raise TypeError("to_disc works on a FullAxisFrf")
    theta = mmap.theta(frf.freqs)
    z = np.exp(1j * theta)
    vals = mmap.to_disc_weight(z) * frf.values
    order = np.argsort(theta, kind="stable")
    if dc_gap is None:
        dc_gap = False
    return DiscSamples(theta[order], vals[order], frf.freqs[order], mmap.alpha,
                       dc_gap=bool(dc_gap))


# -- interpolation -----------------------------------------------------------

def _linear(ts, vs, t):
    return np.interp(t, ts, vs.real) + 1j * np.interp(t, ts, vs.imag)


def _pade_stencils(ts, vs, starts):
    """Barycentric [2/2] weights for the 5-sample stencils at ``starts``.

    Returns the local frame, normalized values, weights and a flag for
    stencils that must not be used.
    """
    m = starts.size
    sten = starts[:, None] + np.arange(5)
    th = ts[sten]
    fv = vs[sten]
    tc = 0.5 * (th[:, 0] + th[:, -1])
    h = 0.5 * (th[:, -1] - th[:, 0])
    x = np.expm1(1j * (th - tc[:, None])) / h[:, None]
    fs = np.max(np.abs(fv), axis=1)
    fs = np.where(fs > 0, fs, 1.0)
    fn = fv / fs[:, None]
    cond = np.stack([np.ones_like(x), x, fn, fn * x], axis=1)
    # null vector: last column of a complete QR of the conjugate transpose
    w = np.linalg.qr(np.conj(np.swapaxes(cond, 1, 2)), mode="complete")[0][:, :, -1]
    wmag = np.abs(w)
    bad = np.min(wmag, axis=1) < 1e-8 * np.max(wmag, axis=1)

    # numerator and denominator sum_i w_i (f_i) prod_{j != i}(x - x_j);
    # both reduce to quadratics
    den = np.zeros((m, 5), dtype=complex)
    num = np.zeros((m, 5), dtype=complex)
    for i in range(5):
        poly = np.ones((m, 1), dtype=complex)
        for j in range(5):
            if j != i:
                poly = np.concatenate([poly, np.zeros((m, 1))], axis=1) \
                    - x[:, j:j + 1] * np.concatenate([np.zeros((m, 1)), poly], axis=1)
        den += w[:, i:i + 1] * poly
        num += (w[:, i] * fn[:, i])[:, None] * poly
    gap = np.min(np.diff(th, axis=1), axis=1) / h
    qa, qb, qc = den[:, 2], den[:, 3], den[:, 4]
    root = np.sqrt(qb * qb - 4 * qa * qc)
    with np.errstate(divide="ignore", invalid="ignore"):
        # stable quadratic formula; a missing root shows up as inf/nan
        qq = -0.5 * (qb + np.where((np.conj(qb) * root).real >= 0, root, -root))
        roots = np.stack([qq / qa, qc / qq], axis=1)
    near = (np.abs(roots.imag) <= 1.0) & (np.abs(roots.real) < 0.25 * gap[:, None])
    # A root with a small residue is a pole/zero doublet.  It only matters if
    # the bump it puts on the arc exceeds what linear interpolation would
    # lose there (second difference / 8), since that is the fallback.
    lin_err = np.max(np.abs(fn[:, :-2] - 2 * fn[:, 1:-1] + fn[:, 2:]), axis=1) / 8
    with np.errstate(divide="ignore", invalid="ignore"):
        nr = (num[:, 2:3] * roots + num[:, 3:4]) * roots + num[:, 4:5]
        res = np.abs(nr / (2 * qa[:, None] * roots + qb[:, None]))
        harmful = ~(res < lin_err[:, None] * np.abs(roots.real))
    bad |= np.any(near & np.isfinite(roots) & harmful, axis=1)
    return sten, tc, h, x, fs, fn, w, bad


def _pade(ts, vs, t):
    """Local [2/2] rational interpolation in ``z = exp(j theta)``.

    The five samples around each target define a type [2/2] rational
    interpolant, kept in barycentric form
    ``r(x) = sum w_i f_i/(x - x_i) / sum w_i/(x - x_i)`` with ``x`` a local
    coordinate ``(z/z_c - 1)/h``.  The weights span the null space of
    ``sum w_i x_i^k = sum w_i f_i x_i^k = 0`` (k = 0, 1), which caps both
    degrees at 2.

    A stencil is rejected when a weight vanishes or the denominator has a
    root next to the sampled arc.  A root whose residue moves the arc values
    by less than linear interpolation would lose is a pole/zero doublet and
    is tolerated.  The centred stencil is tried first, then the two shifted
    ones that still bracket the target; if all are rejected, or the value
    overshoots, the target falls back to linear interpolation.
    """
    n = ts.size
    if n < 5:
        return _linear(ts, vs, t)
    idx = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, n - 2)
    out = np.full(t.shape, np.nan + 0j)
    todo = np.arange(t.size)
    scale = np.zeros(t.size)
    for k in (-1, -2, 0):
        if todo.size == 0:
            break
        starts = np.clip(idx[todo] + k, 0, n - 5)
        uniq, inv = np.unique(starts, return_inverse=True)
        sten, tc, h, x, fs, fn, w, bad = _pade_stencils(ts, vs, uniq)
        good = ~bad[inv]
        sel, pick = todo[good], inv[good]
        scale[sel] = fs[pick]
        xt = np.expm1(1j * (t[sel] - tc[pick])) / h[pick]
        d = xt[:, None] - x[pick]
        with np.errstate(divide="ignore", invalid="ignore"):
            c = w[pick] / d
            out[sel] = fs[pick] * np.sum(c * fn[pick], axis=1) / np.sum(c, axis=1)
        rows, cols = np.nonzero(d == 0)
        out[sel[rows]] = vs[sten[pick[rows], cols]]
        todo = todo[~good]
    # targets left in ``todo`` are still NaN
    fallback = ~np.isfinite(out) | (np.abs(out) > 10 * scale)
    if np.any(fallback):
        out[fallback] = _linear(ts, vs, t[fallback])
    return out


def _interp(ts, vs, t, method):
    if method == "linear":
        return _linear(ts, vs, t)
    if method == "pade":
        return _pade(ts, vs, t)
    raise ValueError(f"unknown interpolation method {method!r}; use one of {METHODS}")


def interpolate_disc(disc, theta, method="linear"):
    """Interpolate disc samples at angles ``theta``; zero outside sampled arcs.

    Samples that wrap the whole circle (see :attr:`DiscSamples.periodic`)
    are interpolated periodically instead.
    """
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape, dtype=complex)
    if disc.periodic:
        k = min(3, disc.theta.size)
        ts = np.concatenate([disc.theta[-k:] - 2 * np.pi, disc.theta,
                             disc.theta[:k] + 2 * np.pi])
        vs = np.concatenate([disc.values[-k:], disc.values, disc.values[:k]])
        return _interp(ts, vs, np.mod(theta, 2 * np.pi), method)
    for lo, hi in disc.segments():
        ts, vs = disc.theta[lo:hi], disc.values[lo:hi]
        if ts.size == 1:
            continue
        inside = (theta >= ts[0]) & (theta <= ts[-1])
        if np.any(inside):
            out[inside] = _interp(ts, vs, theta[inside], method)
    return out


def resample_uniform(disc, n_fft=None, method="linear"):
    """Interpolate disc samples onto ``n_fft`` equally spaced angles.

    Arcs without data (above ``f_max``, and around DC when ``disc.dc_gap``)
    are filled with zeros.

    Raises
    ------
    InsufficientGrid
        If ``n_fft`` is below four times the number of samples.
    """
    n = len(disc)
    if n_fft is None:
        n_fft = default_n_fft(n)
    n_fft = int(n_fft)
    if n_fft & (n_fft - 1) or n_fft <= 0:
        raise ValueError(f"n_fft must be a power of two, got {n_fft}")
    if n_fft < 4 * n:
        raise InsufficientGrid(f"n_fft = {n_fft} < 4 x {n} samples")
    theta = 2 * np.pi * np.arange(n_fft) / n_fft
    return UniformDiscGrid(interpolate_disc(disc, theta, method), disc.alpha)


def fft_coefficients(grid):
    """``c_k = mean_n values[n] exp(-j k theta_n)`` for signed ``k``."""
    c = np.fft.fftshift(np.fft.fft(grid.values)) / grid.n_fft
    return FourierCoefficients(c, grid.alpha)


def estimate_interp_error(disc, method="linear", n_fft=None):
    """Even/odd estimate of the interpolation error, in Ohm.

    Within each sampled arc the even-indexed samples are interpolated onto
    the odd-indexed angles.  The mismatch is converted back from disc units
    with ``|z - 1| / (2 sqrt(pi alpha))`` so it can be compared with the
    reconstructed parts directly.  ``n_fft`` is accepted for symmetry with
    :func:`resample_uniform` and does not change the result.
    """
    if len(disc) < MIN_ERROR_SAMPLES:
        raise InsufficientGrid(
            f"need at least {MIN_ERROR_SAMPLES} samples for the error estimate")
    freqs, errs = [], []
    scale = 2 * np.sqrt(np.pi * disc.alpha)
    for lo, hi in disc.segments():
        ts, vs = disc.theta[lo:hi], disc.values[lo:hi]
        fq = disc.freqs[lo:hi]
        if ts.size < 5:
            continue
        even_t, even_v = ts[::2], vs[::2]
        odd = np.arange(1, ts.size, 2)
        odd = odd[ts[odd] <= even_t[-1]]
        guess = _interp(even_t, even_v, ts[odd], method)
        zo = np.exp(1j * ts[odd])
        errs.append(np.abs(guess - vs[odd]) * np.abs(zo - 1) / scale)
        freqs.append(fq[odd])
    freqs = np.concatenate(freqs) if freqs else np.zeros(0)
    errs = np.concatenate(errs) if errs else np.zeros(0)
    order = np.argsort(freqs)
    return ErrorEstimate(freqs[order], errs[order])
