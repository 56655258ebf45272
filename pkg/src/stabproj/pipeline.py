"""End-to-end projection: filter, map, resample, FFT, split, verdict, poles."""
from dataclasses import asdict, dataclass, replace

import numpy as np

from .bandlimit import FilterSpec, apply_filter, design_filter
from .decomposition import DEFAULT_THRESHOLD_DB, reconstruct_parts, verdict
from .disc import (MoebiusMap, default_n_fft, estimate_interp_error, fft_coefficients,
                   resample_uniform, to_disc)
from .errors import InvalidSpec, OrderCapReached
from .frf import FullAxisFrf, db, hermitian_extend
from .poles import kung_unstable_poles


@dataclass(frozen=True)
class AnalysisConfig:
    """Free parameters of the projection.

    ``alpha`` and ``n_fft`` may be ``None`` ("auto"): ``alpha`` then maps
    ``f_max`` to ``exp(j pi/4)`` and ``n_fft`` is the smallest power of two
    above eight times the number of full-axis samples.  ``f_min`` of ``None``
    or 0 selects a lowpass filter; a positive value selects the bandpass
    cascade and leaves the arc around DC zero-filled.
    """

    f_max: float
    f_min: float = None
    filter_order: int = 10
    ripple_db: float = 0.1
    atten_db: float = 100.0
    alpha: float = None
    n_fft: int = None
    interp: str = "linear"
    threshold_db: float = DEFAULT_THRESHOLD_DB
    extract_poles: bool = False
    max_order: int = 20
    verdict_mode: str = "global"

    def __post_init__(self):
        if self.f_min is not None and self.f_min >= self.f_max:
            raise InvalidSpec("f_min must be below f_max")
        if self.threshold_db <= 0:
            raise InvalidSpec("threshold_db must be positive")
        if self.interp not in ("linear", "pade"):
            raise InvalidSpec(f"unknown interpolation {self.interp!r}")

    @property
    def bandpass(self):
        return bool(self.f_min)

    def filter_spec(self):
        return FilterSpec(
            kind="bandpass" if self.bandpass else "lowpass",
            order=self.filter_order,
            f_max=self.f_max,
            f_min=self.f_min if self.bandpass else None,
            passband_ripple_db=self.ripple_db,
            stopband_atten_db=self.atten_db,
        )

    def moebius(self):
        if self.alpha is None:
            return MoebiusMap.for_fmax(self.f_max)
        return MoebiusMap(self.alpha)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class AnalysisResult:
    config: AnalysisConfig
    decomposition: object
    report: object
    poles: object = None
    label: str = ""
    b: int = 0
    pole_error: str = None

    def energy_split(self):
        """Fractions of ``sum |c_k|^2`` carried by ``k >= 0`` and ``k < 0``."""
        stable, unstable = self.decomposition.coefficients.energy()
        total = stable + unstable
        if total == 0:
            return 1.0, 0.0
        return stable / total, unstable / total

    def curves(self):
        """Columns ``(freq, |stable| dB, |unstable| dB, error dB)`` for f >= 0."""
        dec = self.decomposition
        pos = dec.freqs >= 0
        f = dec.freqs[pos]
        err = dec.error.at(f) if dec.error.freqs.size else np.zeros(f.size)
        return (f, db(dec.stable.values[pos]), db(dec.unstable.values[pos]), db(err))


def stopband_leakage(full, config):
    """Bound on the filtered response outside the sampled band.

    The data stop at the band edges, where the filter has a transmission
    zero; beyond them ``|Z H|`` is at most the stopband level times ``|Z|``.
    The unfiltered magnitude at the edge samples stands in for ``|Z|`` there.
    """
    pos = np.flatnonzero(full.freqs > 0)
    if pos.size == 0:
        return 0.0
    edge = [pos[-1]]
    if config.bandpass:
        edge.append(pos[0])
    return float(10 ** (-config.atten_db / 20) * np.max(np.abs(full.values[edge])))


def project(frf, config):
    """Run the projection and verdict on one response.

    Parameters
    ----------
    frf : Frf or FullAxisFrf
        Unfiltered response; mirrored to negative frequencies if one-sided.
    config : AnalysisConfig
    """
    full = frf if isinstance(frf, FullAxisFrf) else hermitian_extend(frf)
    flt = design_filter(config.filter_spec())
    mmap = config.moebius()
    filtered = apply_filter(full, flt)
    disc = to_disc(filtered, mmap, dc_gap=config.bandpass)
    n_fft = config.n_fft or default_n_fft(len(disc))
    grid = resample_uniform(disc, n_fft, config.interp)
    coeffs = fft_coefficients(grid)
    error = estimate_interp_error(disc, config.interp)
    error = replace(error, leakage=stopband_leakage(full, config))
    dec = reconstruct_parts(coeffs, filtered, mmap, error, config.interp)
    rep = verdict(dec, config.threshold_db, mode=config.verdict_mode)
    poles, pole_error = None, None
    if config.extract_poles:
        try:
            poles = kung_unstable_poles(coeffs, mmap, error, max_order=config.max_order,
                                        unstable=dec.unstable, f_max=config.f_max)
        except OrderCapReached as exc:
            pole_error = str(exc)
    return AnalysisResult(config, dec, rep, poles, label=getattr(frf, "label", ""),
                          b=getattr(frf, "b", 0), pole_error=pole_error)
