"""Sampled frequency responses and their Hermitian extension.

An :class:`Frf` holds an impedance sampled on non-negative frequencies, the
way a circuit simulator exports it.  The projection works on the whole
imaginary axis, so the data is mirrored into a :class:`FullAxisFrf` first.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, InvalidGrid, NonRealDc

MIN_SAMPLES = 8
DC_IMAG_TOL = 1e-9
GRID_MATCH_TOL = 1e-12


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True).reshape(-1)
    a.flags.writeable = False
    return a


def _classify_grid(freqs):
    df = np.diff(freqs)
    if np.allclose(df, df[0], rtol=1e-6, atol=0):
        return "linear"
    if freqs[0] > 0:
        r = freqs[1:] / freqs[:-1]
        if np.allclose(r, r[0], rtol=1e-6, atol=0):
            return "logarithmic"
    return "irregular"


@dataclass(frozen=True)
class Frf:
    """Complex samples of an impedance on a grid of non-negative frequencies.

    Parameters
    ----------
    freqs : array_like
        Frequencies in Hz, strictly increasing, finite and ``>= 0``.
    values : array_like
        Complex impedance in Ohm, one per frequency.
    b : int
        Mixing index of a large-signal transfer impedance (0 for
        small-signal analysis).  Metadata only.
    grid_kind : {"linear", "logarithmic", "irregular"}, optional
        Detected from ``freqs`` when omitted.
    label : str
        Free text, e.g. ``"Z_mn"``.
    """

    freqs: np.ndarray
    values: np.ndarray
    b: int = 0
    grid_kind: str = None
    label: str = ""

    def __post_init__(self):
        f = _frozen(self.freqs, float)
        v = _frozen(self.values, complex)
        if f.shape != v.shape:
            raise InvalidGrid(f"{f.size} frequencies but {v.size} values")
        if f.size < MIN_SAMPLES:
            raise InvalidGrid(f"need at least {MIN_SAMPLES} samples, got {f.size}")
        if not np.all(np.isfinite(f)):
            raise InvalidGrid("non-finite frequency")
        if f[0] < 0:
            raise InvalidGrid("negative frequency in a one-sided response")
        if np.any(np.diff(f) <= 0):
            raise InvalidGrid("frequencies must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise InvalidGrid("NaN or Inf in response values")
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "b", int(self.b))
        if self.grid_kind is None:
            object.__setattr__(self, "grid_kind", _classify_grid(f))
        elif self.grid_kind not in ("linear", "logarithmic", "irregular"):
            raise ValueError(f"unknown grid kind {self.grid_kind!r}")

    def __len__(self):
        return self.freqs.size

    @property
    def omega(self):
        return 2 * np.pi * self.freqs

    def db(self):
        """Magnitude in dB(Ohm)."""
        return db(self.values)


@dataclass(frozen=True)
class FullAxisFrf:
    """Response on a grid that covers negative and positive frequencies."""

    freqs: np.ndarray
    values: np.ndarray
    b: int = 0
    label: str = ""
    has_dc: bool = field(init=False)

    def __post_init__(self):
        f = _frozen(self.freqs, float)
        v = _frozen(self.values, complex)
        if f.shape != v.shape:
            raise InvalidGrid(f"{f.size} frequencies but {v.size} values")
        if f.size < MIN_SAMPLES:
            raise InvalidGrid(f"need at least {MIN_SAMPLES} samples, got {f.size}")
        if not np.all(np.isfinite(f)) or np.any(np.diff(f) <= 0):
            raise InvalidGrid("frequencies must be finite and strictly increasing")
        if not np.all(np.isfinite(v)):
            raise InvalidGrid("NaN or Inf in response values")
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "has_dc", bool(np.any(f == 0)))

    def __len__(self):
        return self.freqs.size

    @property
    def omega(self):
        return 2 * np.pi * self.freqs

    def is_hermitian(self, rtol=0.0):
        """True when the grid is symmetric and ``value(-f) == conj(value(f))``."""
        f, v = self.freqs, self.values
        if not np.array_equal(f, -f[::-1]):
            return False
        err = np.abs(v - np.conj(v[::-1]))
        return bool(np.all(err <= rtol * np.max(np.abs(v), initial=0.0)))

    def positive(self):
        """The ``f >= 0`` half as an :class:`Frf`."""
        keep = self.freqs >= 0
        return Frf(self.freqs[keep], self.values[keep], b=self.b, label=self.label)

    def with_values(self, values, label=None):
        return FullAxisFrf(self.freqs, values, b=self.b,
                           label=self.label if label is None else label)


def db(x):
    """``20*log10|x|`` with zeros mapped to ``-inf`` silently."""
    with np.errstate(divide="ignore"):
        return 20 * np.log10(np.abs(x))


def hermitian_extend(frf):
    """Mirror a one-sided response onto negative frequencies.

    The value at ``-f`` is the conjugate of the value at ``f``.  A 0 Hz sample
    is kept once and must be real.  No DC point is synthesized when the grid
    starts above 0 Hz.  A :class:`FullAxisFrf` that is already Hermitian is
    returned unchanged.

    Raises
    ------
    NonRealDc
        If ``|Im Z(0)| / |Z(0)| > 1e-9``.
    InvalidGrid
        For unsorted input or non-Hermitian full-axis input.
    """
    if isinstance(frf, FullAxisFrf):
        if not frf.is_hermitian(rtol=DC_IMAG_TOL):
            raise InvalidGrid("full-axis response is not Hermitian")
        return frf
    if not isinstance(frf, Frf):
        raise TypeError(f"expected Frf, got {type(frf).__name__}")

    f, v = frf.freqs, frf.values
    if f[0] == 0:
        z0 = v[0]
        if abs(z0.imag) > DC_IMAG_TOL * abs(z0):
            raise NonRealDc(f"Z(0) = {z0!r} is not real")
        dc = np.array([z0.real], dtype=complex)
        freqs = np.concatenate([-f[:0:-1], [0.0], f[1:]])
        values = np.concatenate([np.conj(v[:0:-1]), dc, v[1:]])
    else:
        freqs = np.concatenate([-f[::-1], f])
        values = np.concatenate([np.conj(v[::-1]), v])
    return FullAxisFrf(freqs, values, b=frf.b, label=frf.label)


def _check_same_grid(a, b):
    if a.freqs.shape != b.freqs.shape:
        raise GridMismatch("responses have different lengths")
    scale = np.max(np.abs(a.freqs))
    if np.max(np.abs(a.freqs - b.freqs)) > GRID_MATCH_TOL * scale:
        raise GridMismatch("responses are sampled on different frequency grids")


def recombine_ssb(z_plus, z_minus):
    """Turn single-sideband transfer impedances into Hermitian ones.

    A mixer-like small-signal analysis driven by ``exp(j w t)`` returns
    ``Z'[b]`` and ``Z'[-b]`` that are not Hermitian.  Moving to a sine/cosine
    excitation basis gives::

        Z[b]  = (Z'[b] + Z'[-b]) / 2
        Z[-b] = j (Z'[b] - Z'[-b]) / 2

    Parameters
    ----------
    z_plus, z_minus : Frf
        ``Z'[b]`` (with ``b >= 1``) and ``Z'[-b]`` on the same grid.

    Returns
    -------
    (Frf, Frf)
        ``Z[b]`` and ``Z[-b]``.
    """
    _check_same_grid(z_plus, z_minus)
    b = z_plus.b
    if b < 1:
        raise ValueError("recombination needs a mixing index b >= 1")
    zp, zm = z_plus.values, z_minus.values
    plus = Frf(z_plus.freqs, 0.5 * (zp + zm), b=b, grid_kind=z_plus.grid_kind,
               label=z_plus.label)
    minus = Frf(z_plus.freqs, 0.5j * (zp - zm), b=-b, grid_kind=z_plus.grid_kind,
                label=z_minus.label)
    return plus, minus


def split_ssb(z_b, z_minus_b):
    """Inverse of :func:`recombine_ssb`: ``Z'[b] = Z[b] - j Z[-b]``, ``Z'[-b] = Z[b] + j Z[-b]``."""
    _check_same_grid(z_b, z_minus_b)
    b = abs(z_b.b)
    zp = z_b.values - 1j * z_minus_b.values
    zm = z_b.values + 1j * z_minus_b.values
    return (Frf(z_b.freqs, zp, b=b, grid_kind=z_b.grid_kind, label=z_b.label),
            Frf(z_b.freqs, zm, b=-b, grid_kind=z_b.grid_kind, label=z_minus_b.label))
