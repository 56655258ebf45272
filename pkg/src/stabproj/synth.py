"""Synthetic responses with known poles, and exact split oracles.

Everything here is carried in pole/residue form so the stable and unstable
parts of ``Z(s) H(s)`` follow from residue calculus without any sampling.
"""
from dataclasses import dataclass

import numpy as np

from .errors import BadSpec, MultiplePole
from .frf import Frf, FullAxisFrf

# numerator (highest power first) and denominator scale of the order-15 test function
APPENDIX_NUM = np.array([-228.5, -153.7, -875.2, -550.2, -1364.9, -789.9,
                         -1118.6, -584.2, -520.9, -239.2, -140.7, -54.7,
                         -21.4, -5.9, -1.0])
APPENDIX_POLE = -5.0
APPENDIX_MULT = 15
APPENDIX_SCALE = 9.9281e10


@dataclass(frozen=True)
class PolesResiduesSystem:
    """``Z(s) = exp(-s tau) (d + sum_i r_i / (s - p_i)^m_i)``."""

    poles: np.ndarray
    residues: np.ndarray
    multiplicities: np.ndarray = None
    direct: complex = 0.0
    delay: float = 0.0
    seed: int = None

    def __post_init__(self):
        p = np.asarray(self.poles, dtype=complex).reshape(-1)
        r = np.asarray(self.residues, dtype=complex).reshape(-1)
        m = (np.ones(p.size, dtype=int) if self.multiplicities is None
             else np.asarray(self.multiplicities, dtype=int).reshape(-1))
        if not p.size == r.size == m.size:
            raise BadSpec("poles, residues and multiplicities differ in length")
        if np.any(m < 1):
            raise BadSpec("multiplicities must be >= 1")
        if self.delay < 0:
            raise BadSpec("delay must be non-negative")
        for name, a in (("poles", p), ("residues", r), ("multiplicities", m)):
            a.flags.writeable = False
            object.__setattr__(self, name, a)
        object.__setattr__(self, "direct", complex(self.direct))

    @property
    def order(self):
        return int(np.sum(self.multiplicities))

    def unstable_poles(self):
        return np.unique(self.poles[self.poles.real > 0])

    def __call__(self, s):
        """Evaluate at complex frequencies ``s`` (rad/s)."""
        s = np.asarray(s, dtype=complex)
        out = np.full(s.shape, self.direct, dtype=complex)
        for p, r, m in zip(self.poles, self.residues, self.multiplicities):
            out += r / (s - p) ** m
        if self.delay:
            out *= np.exp(-s * self.delay)
        return out

    def without_delay(self):
        return PolesResiduesSystem(self.poles, self.residues, self.multiplicities,
                                   self.direct, 0.0, self.seed)

    def with_delay(self, delay):
        return PolesResiduesSystem(self.poles, self.residues, self.multiplicities,
                                   self.direct, delay, self.seed)

    def __add__(self, other):
        if self.delay != other.delay:
            raise BadSpec("cannot add systems with different delays")
        return PolesResiduesSystem(
            np.concatenate([self.poles, other.poles]),
            np.concatenate([self.residues, other.residues]),
            np.concatenate([self.multiplicities, other.multiplicities]),
            self.direct + other.direct, self.delay)

    def scaled(self, gain):
        return PolesResiduesSystem(self.poles, gain * self.residues,
                                   self.multiplicities, gain * self.direct,
                                   self.delay, self.seed)


def _pair(p, r):
    return [p, np.conj(p)], [r, np.conj(r)]


def random_system(order, band, n_unstable_pairs=0, unstable_spec=None, seed=0,
                  unstable_gain=0.1, delay=0.0):
    """Random Hermitian pole/residue system with planted unstable pairs.

    Stable poles have ``|Im|`` log-uniform over ``band`` (Hz, times 2 pi) and
    real parts ``-u * 2 pi f_max`` with ``u`` log-uniform in
    ``[1e-3, 1e-1]``.  Residues are complex Gaussian scaled by ``|Re p|`` so
    every resonance peaks at a comparable level.  Each planted pair sits at
    ``sigma +- j 2 pi f0`` with residue ``unstable_gain * sigma``: a small
    residue makes the instability hard to see in the raw response.

    Parameters
    ----------
    order : int
        Total number of poles, at least ``2 n_unstable_pairs + 2``.
    band : (float, float)
        Frequency range in Hz that the stable resonances cover.
    unstable_spec : (f0, sigma) or list of them
        Frequency (Hz) and growth rate (rad/s, > 0) of each unstable pair.
    """
    f_lo, f_hi = band
    if not 0 < f_lo < f_hi:
        raise BadSpec("band must satisfy 0 < f_lo < f_hi")
    if order < 2 * n_unstable_pairs + 2:
        raise BadSpec("order must be at least 2*n_unstable_pairs + 2")
    specs = []
    if n_unstable_pairs:
        if unstable_spec is None:
            raise BadSpec("unstable_spec needed for planted pairs")
        specs = list(unstable_spec) if np.ndim(unstable_spec[0]) else [unstable_spec]
        if len(specs) == 1:
            specs = specs * n_unstable_pairs
        if len(specs) != n_unstable_pairs:
            raise BadSpec("one (f0, sigma) per unstable pair")
        for f0, sigma in specs:
            if sigma <= 0:
                raise BadSpec("sigma must be positive for an unstable pair")
            if not f_lo <= f0 <= f_hi:
                raise BadSpec(f"f0 = {f0} Hz lies outside the band")

    rng = np.random.default_rng(seed)
    n_stable = order - 2 * n_unstable_pairs
    w_max = 2 * np.pi * f_hi
    poles, residues = [], []
    for _ in range(n_stable // 2):
        wi = 2 * np.pi * np.exp(rng.uniform(np.log(f_lo), np.log(f_hi)))
        sr = -w_max * np.exp(rng.uniform(np.log(1e-3), np.log(1e-1)))
        r = abs(sr) * (rng.standard_normal() + 1j * rng.standard_normal())
        pp, rr = _pair(sr + 1j * wi, r)
        poles += pp
        residues += rr
    if n_stable % 2:
        sr = -w_max * np.exp(rng.uniform(np.log(1e-3), np.log(1e-1)))
        poles.append(complex(sr))
        residues.append(complex(abs(sr) * rng.standard_normal()))
    for f0, sigma in specs:
        pp, rr = _pair(sigma + 2j * np.pi * f0, unstable_gain * sigma)
        poles += pp
        residues += rr
    return PolesResiduesSystem(poles, residues, delay=delay, seed=seed)


def random_mixed_system(degree, f_max, seed=0, min_distance=None, frac_unstable=0.5):
    """Low-degree Hermitian system with poles on both sides of the axis.

    Poles have ``|Im|`` uniform in ``[0, 0.7 f_max]`` (times 2 pi) and
    ``|Re|`` between ``min_distance`` (default ``0.05 alpha``) and
    ``0.5 * 2 pi f_max``; each pair is unstable with probability
    ``frac_unstable``, and at least one pair lands on each side.
    """
    if degree < 4:
        raise BadSpec("need degree >= 4 for a mixed system")
    rng = np.random.default_rng(seed)
    w_max = 2 * np.pi * f_max
    if min_distance is None:
        min_distance = 0.05 * w_max * (np.sqrt(2) - 1)
    n_pairs = degree // 2
    side = rng.uniform(size=n_pairs) < frac_unstable
    side[0], side[-1] = True, False
    poles, residues = [], []
    for unstable in side:
        re = np.exp(rng.uniform(np.log(min_distance), np.log(0.5 * w_max)))
        im = rng.uniform(0, 0.7 * w_max)
        r = w_max * 0.1 * (rng.standard_normal() + 1j * rng.standard_normal())
        pp, rr = _pair((re if unstable else -re) + 1j * im, r)
        poles += pp
        residues += rr
    if degree % 2:
        re = np.exp(rng.uniform(np.log(min_distance), np.log(0.5 * w_max)))
        poles.append(complex(-re))
        residues.append(complex(w_max * 0.1 * rng.standard_normal()))
    return PolesResiduesSystem(poles, residues, seed=seed)


def period_doubling_system(f_ex=100e3, n_copies=3, sigma=None, base_residue=None,
                           decay=0.5):
    """Unstable resonator pairs at ``f_ex/2 + k f_ex``, ``k = 0 .. n_copies-1``.

    Mimics the unstable part of a harmonic-balance orbit that wants to
    period-double: the base pole at ``f_ex/2`` and its shifted copies.
    """
    if sigma is None:
        sigma = 2 * np.pi * 0.02 * f_ex
    if base_residue is None:
        base_residue = sigma
    poles, residues = [], []
    for k in range(n_copies):
        f0 = f_ex / 2 + k * f_ex
        pp, rr = _pair(sigma + 2j * np.pi * f0, base_residue * decay ** k)
        poles += pp
        residues += rr
    return PolesResiduesSystem(poles, residues)


def eval_frf(system, freqs, label=""):
    """Sample ``Z(j 2 pi f)`` on non-negative frequencies."""
    freqs = np.asarray(freqs, dtype=float)
    return Frf(freqs, system(2j * np.pi * freqs), label=label)


def appendix_function(s):
    """The stable order-15 rational function whose local fits look unstable."""
    s = np.asarray(s, dtype=complex)
    return APPENDIX_SCALE * np.polyval(APPENDIX_NUM, s) / (s - APPENDIX_POLE) ** APPENDIX_MULT


def appendix_fun(omega):
    """Sample :func:`appendix_function` at ``s = j omega``.

    The function lives in normalized units, so ``omega`` is used directly as
    angular frequency; the returned :class:`Frf` stores ``omega / (2 pi)``.
    A grid reaching negative frequencies gives a :class:`FullAxisFrf`.
    """
    omega = np.asarray(omega, dtype=float)
    cls = FullAxisFrf if np.any(omega < 0) else Frf
    return cls(omega / (2 * np.pi), appendix_function(1j * omega), label="appendix")


# -- exact split oracles -----------------------------------------------------

def _taylor_filter(flt, lam, n_terms):
    """First ``n_terms`` Taylor coefficients of ``H(s)`` about ``s = lam``."""
    series = np.zeros(n_terms, dtype=complex)
    series[0] = flt.gain
    for z in flt.zeros:
        # (s - z) = (lam - z) + (s - lam)
        nxt = series * (lam - z)
        nxt[1:] += series[:-1]
        series = nxt
    for p in flt.poles:
        d = lam - p
        # 1/(s - p) = sum_m (-1)^m (s - lam)^m / d^(m+1)
        geo = (-1.0 / d) ** np.arange(n_terms) / d
        series = np.convolve(series, geo)[:n_terms]
    return series


@dataclass(frozen=True)
class AnalyticSplit:
    """Exact stable and unstable parts of ``Z(s) H(s)``.

    ``unstable`` is a delay-free pole/residue system.  ``stable`` holds the
    left-half-plane partial fractions when the input has no delay; with a
    delay the stable part is not rational and is evaluated as the
    complement.
    """

    system: PolesResiduesSystem
    filter: object
    unstable: PolesResiduesSystem
    stable: PolesResiduesSystem = None

    def unstable_at(self, freqs):
        return self.unstable(2j * np.pi * np.asarray(freqs, dtype=float))

    def stable_at(self, freqs):
        s = 2j * np.pi * np.asarray(freqs, dtype=float)
        if self.stable is not None:
            return self.stable(s)
        return self.system(s) * self.filter(s) - self.unstable(s)

    def total_at(self, freqs):
        s = 2j * np.pi * np.asarray(freqs, dtype=float)
        return self.system(s) * self.filter(s)


def analytic_split(system, flt):
    """Partial-fraction split of ``Z(s) H(s)`` into LHP and RHP pole sums.

    For a delayed term ``exp(-s tau) a/(s - lam)`` with ``Re lam > 0`` the
    unstable part is ``a exp(-lam tau)/(s - lam)``; the remainder is entire
    and bounded in the right half-plane, hence stable.

    Raises
    ------
    MultiplePole
        For repeated poles combined with a delay.
    """
    if system.direct != 0:
        raise BadSpec("analytic split needs a strictly proper system")
    if np.any(system.multiplicities > 1) and system.delay:
        raise MultiplePole("repeated poles are only supported without delay")
    if np.intersect1d(system.poles, flt.poles).size:
        raise BadSpec("system and filter share a pole")

    u_p, u_r, u_m = [], [], []
    s_p, s_r, s_m = [], [], []
    lambdas = np.unique(system.poles)
    for lam in lambdas:
        sel = system.poles == lam
        # principal part a_j/(s - lam)^j, j = 1..m
        m_max = int(system.multiplicities[sel].max())
        a = np.zeros(m_max + 1, dtype=complex)
        for r, m in zip(system.residues[sel], system.multiplicities[sel]):
            a[m] += r
        h = _taylor_filter(flt, lam, m_max)
        for q in range(1, m_max + 1):
            b = sum(a[j] * h[j - q] for j in range(q, m_max + 1))
            if lam.real > 0:
                b = b * np.exp(-lam * system.delay)
                u_p.append(lam), u_r.append(b), u_m.append(q)
            else:
                s_p.append(lam), s_r.append(b), s_m.append(q)
    unstable = PolesResiduesSystem(u_p, u_r, u_m)

    stable = None
    if not system.delay:
        zsys = system
        for i, p in enumerate(flt.poles):
            others = np.delete(flt.poles, i)
            res = flt.gain * np.prod(p - flt.zeros) / np.prod(p - others) * zsys(p)
            s_p.append(p), s_r.append(res), s_m.append(1)
        stable = PolesResiduesSystem(s_p, s_r, s_m)
    return AnalyticSplit(system, flt, unstable, stable)
