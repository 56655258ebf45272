"""Stable elliptic band-limiting filters.

The filtered response ``Z(jw) H(jw)`` must be square integrable and must go
to zero continuously at the edge of the simulated band.  An analog elliptic
(Cauer) filter is designed with scipy and frequency-scaled so that its
lowest transmission zero sits exactly on ``f_max``; for a bandpass, a
highpass section puts its highest zero on ``f_min``.
"""
from dataclasses import dataclass

import numpy as np
from scipy import signal, special

from .errors import BandTooNarrow, InfeasibleSpec, InvalidSpec
from .frf import FullAxisFrf

MIN_BAND_RATIO = 1.2


@dataclass(frozen=True)
class FilterSpec:
    """Parameters of the band-limiting filter.

    ``order`` is the order of each elliptic section; a bandpass cascades a
    lowpass and a highpass section of this order.
    """

    kind: str = "lowpass"
    order: int = 10
    f_max: float = None
    f_min: float = None
    passband_ripple_db: float = 0.1
    stopband_atten_db: float = 100.0

    def __post_init__(self):
        if self.kind not in ("lowpass", "bandpass"):
            raise InvalidSpec(f"unknown filter kind {self.kind!r}")
        if self.order % 2 or not 4 <= self.order <= 20:
            raise InvalidSpec(f"order must be even and in [4, 20], got {self.order}")
        if self.f_max is None or not np.isfinite(self.f_max) or self.f_max <= 0:
            raise InvalidSpec("f_max must be a positive frequency")
        if self.kind == "bandpass":
            if self.f_min is None or not 0 < self.f_min < self.f_max:
                raise InvalidSpec("bandpass needs 0 < f_min < f_max")
        if self.passband_ripple_db <= 0:
            raise InvalidSpec("passband ripple must be positive")
        if self.stopband_atten_db <= 40:
            raise InvalidSpec("stopband attenuation must exceed 40 dB")


@dataclass(frozen=True)
class RationalFilter:
    """Zeros, poles (rad/s) and gain of an analog filter.

    ``passbands`` and ``stopbands`` list the ``(lo, hi)`` edges in rad/s of the
    regions where the ripple and attenuation guarantees hold; they are used
    by the tests and by diagnostics only.
    """

    zeros: np.ndarray
    poles: np.ndarray
    gain: float
    passband_ripple_db: float = 0.0
    stopband_atten_db: float = np.inf
    passbands: tuple = ()
    stopbands: tuple = ()

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=complex).copy()
        p = np.asarray(self.poles, dtype=complex).copy()
        z.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "poles", p)
        object.__setattr__(self, "gain", float(self.gain))

    @property
    def order(self):
        return self.poles.size

    def is_stable(self):
        return bool(np.all(self.poles.real < 0))

    def __call__(self, s):
        """Evaluate ``H(s)`` at complex frequencies ``s`` (rad/s)."""
        return _zpk_eval(self.zeros, self.poles, self.gain, s)

    def __mul__(self, other):
        return RationalFilter(
            np.concatenate([self.zeros, other.zeros]),
            np.concatenate([self.poles, other.poles]),
            self.gain * other.gain,
            passband_ripple_db=self.passband_ripple_db + other.passband_ripple_db,
            stopband_atten_db=min(self.stopband_atten_db, other.stopband_atten_db),
            passbands=_intersect(self.passbands, other.passbands),
            stopbands=self.stopbands + other.stopbands,
        )


IDENTITY = RationalFilter([], [], 1.0, passbands=((0.0, np.inf),))


def _intersect(a, b):
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo < hi:
                out.append((lo, hi))
    return tuple(out)


def _zpk_eval(zeros, poles, gain, s):
    s = np.asarray(s, dtype=complex)
    h = np.full(s.shape, gain, dtype=complex)
    n = min(zeros.size, poles.size)
    # pair each zero with a pole so intermediate products stay O(1)
    for z, p in zip(zeros[:n], poles[:n]):
        h *= (s - z) / (s - p)
    for z in zeros[n:]:
        h *= s - z
    for p in poles[n:]:
        h /= s - p
    return h


def _selectivity(order, ripple_db, atten_db):
    """Ratio passband edge / stopband edge from the elliptic degree equation."""
    k1 = np.sqrt(np.expm1(0.1 * np.log(10) * ripple_db)
                 / np.expm1(0.1 * np.log(10) * atten_db))
    m1 = k1 * k1
    # nome of the selectivity is the order-th root of the nome of k1
    log_q = -np.pi * special.ellipkm1(m1) / special.ellipk(m1) / order
    q = np.exp(log_q)
    m = np.arange(1, 30)
    prod = np.prod((1 + q ** (2 * m)) / (1 + q ** (2 * m - 1)))
    return min(4 * np.sqrt(q) * prod ** 4, 1.0)


def _check_design(zeros, poles, atten_db):
    if not np.all(np.isfinite(poles)) or not np.all(np.isfinite(zeros)):
        raise InfeasibleSpec("elliptic design did not converge")
    if not np.all(poles.real < 0):
        raise InfeasibleSpec("elliptic design produced an unstable pole")


def _required_order(ripple_db, atten_db, pass_edge, stop_edge):
    if stop_edge <= pass_edge:
        return None
    n, _ = signal.ellipord(pass_edge, stop_edge, ripple_db, atten_db, analog=True)
    return int(n + n % 2)


def design_elliptic_lowpass(spec):
    """Elliptic lowpass whose lowest transmission zero is at ``f_max``.

    The prototype is designed for ``spec.order``, the ripple and the
    attenuation; its passband edge follows from the degree equation.  The
    whole design is then frequency-scaled so the lowest finite zero lands on
    ``2*pi*f_max``; every other zero lies above.
    """
    if spec.kind != "lowpass":
        raise InvalidSpec("design_elliptic_lowpass needs a lowpass spec")
    return _lowpass_section(spec.order, spec.passband_ripple_db,
                            spec.stopband_atten_db, 2 * np.pi * spec.f_max)


def _lowpass_section(order, ripple_db, atten_db, w_zero):
    z, p, k = signal.ellip(order, ripple_db, atten_db, 1.0, analog=True,
                           output="zpk")
    _check_design(z, p, atten_db)
    zi = np.abs(z.imag)
    scale = w_zero / zi.min()
    # purely imaginary zeros, the lowest pair pinned exactly to +-j*w_zero
    zeros = 1j * np.sign(z.imag) * zi * scale
    zeros[np.argsort(zi)[:2]] = [1j * w_zero, -1j * w_zero]
    poles = p * scale
    sel = _selectivity(order, ripple_db, atten_db)
    w_pass = scale
    w_stop = scale / sel
    if not w_stop <= w_zero * (1 + 1e-9):
        raise InfeasibleSpec(
            f"attenuation {atten_db} dB not reachable at order {order}",
            required_order=_required_order(ripple_db, atten_db, w_pass, w_zero))
    return RationalFilter(zeros, poles, k, passband_ripple_db=ripple_db,
                          stopband_atten_db=atten_db,
                          passbands=((0.0, w_pass),),
                          stopbands=((w_stop, np.inf),))


def _highpass_section(order, ripple_db, atten_db, w_zero):
    z, p, k = signal.ellip(order, ripple_db, atten_db, 1.0, btype="highpass",
                           analog=True, output="zpk")
    _check_design(z, p, atten_db)
    zi = np.abs(z.imag)
    scale = w_zero / zi.max()
    zeros = 1j * np.sign(z.imag) * zi * scale
    zeros[np.argsort(zi)[-2:]] = [-1j * w_zero, 1j * w_zero]
    poles = p * scale
    sel = _selectivity(order, ripple_db, atten_db)
    w_pass = scale
    w_stop = scale * sel
    # for an even-order highpass the number of zeros equals the number of poles
    return RationalFilter(zeros, poles, k, passband_ripple_db=ripple_db,
                          stopband_atten_db=atten_db,
                          passbands=((w_pass, np.inf),),
                          stopbands=((0.0, w_stop),))


def design_band_filter(spec):
    """Lowpass times highpass cascade with zeros at ``f_max`` and ``f_min``."""
    if spec.kind != "bandpass":
        raise InvalidSpec("design_band_filter needs a bandpass spec")
    if spec.f_max / spec.f_min < MIN_BAND_RATIO:
        raise BandTooNarrow(
            f"f_max/f_min = {spec.f_max / spec.f_min:.3g} < {MIN_BAND_RATIO}")
    lp = _lowpass_section(spec.order, spec.passband_ripple_db,
                          spec.stopband_atten_db, 2 * np.pi * spec.f_max)
    hp = _highpass_section(spec.order, spec.passband_ripple_db,
                           spec.stopband_atten_db, 2 * np.pi * spec.f_min)
    return lp * hp


def design_filter(spec):
    """Dispatch on ``spec.kind``."""
    if spec.kind == "lowpass":
        flt = design_elliptic_lowpass(spec)
    else:
        flt = design_band_filter(spec)
    assert flt.is_stable(), "band-limiting filter must be stable"
    return flt


def evaluate(flt, freqs):
    """``H(j 2 pi f)`` at frequencies ``freqs`` in Hz."""
    return flt(2j * np.pi * np.asarray(freqs, dtype=float))


def apply_filter(frf, flt):
    """Samplewise product ``Z(jw) H(jw)``."""
    if not isinstance(frf, FullAxisFrf):
        raise TypeError("apply_filter works on a FullAxisFrf")
    return frf.with_values(frf.values * evaluate(flt, frf.freqs))
