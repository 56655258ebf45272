"""Unstable pole extraction and local rational fitting.

The unstable part of a filtered response is rational, and in disc
coordinates its Fourier coefficients ``c_{-m}`` form the impulse response of
a finite-dimensional system with all poles inside the unit circle.  Kung's
Hankel-SVD realization recovers those poles; the Moebius inverse brings them
back to the s-plane.

:func:`local_rational_fit` is the classic alternative: a low-order model
fitted on a narrow band.  It is provided to show how such local models can
report right-half-plane poles for a stable response.
"""
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DiscPoleOutside, IllConditioned, InsufficientGrid, OrderCapReached
from .frf import Frf, FullAxisFrf

M_CAP = 512
DEFAULT_TOL_REL = 1e-3
RELIABLE_FRACTION = 0.9
COND_LIMIT = 1e14
WEIGHT_FLOOR = 1e-2


@dataclass(frozen=True)
class Pole:
    lam: complex
    residue: complex
    reliable: bool = True

    @property
    def frequency(self):
        """``|Im lambda| / 2 pi`` in Hz."""
        return abs(self.lam.imag) / (2 * np.pi)


@dataclass(frozen=True)
class PoleSet:
    poles: tuple
    model_order: int
    singular_values: np.ndarray
    threshold: float = 0.0
    dropped: int = 0

    def __len__(self):
        return len(self.poles)

    def __iter__(self):
        return iter(self.poles)

    @property
    def lambdas(self):
        return np.array([p.lam for p in self.poles], dtype=complex)

    @property
    def residues(self):
        return np.array([p.residue for p in self.poles], dtype=complex)


def hankel_matrix(h):
    """``H[i, j] = h[i + j]`` with ``len(h)//2`` rows and the rest as columns."""
    h = np.asarray(h)
    m = h.size
    rows = m // 2
    cols = m - rows
    idx = np.arange(rows)[:, None] + np.arange(cols)[None, :]
    return h[idx]


def kung_realization(h, order):
    """Poles of the order-``order`` realization of ``h[m] = sum r_i z_i^m``.

    Returns the disc poles (eigenvalues of the shift operator estimated from
    the truncated observability factor).
    """
    U, s, _ = np.linalg.svd(hankel_matrix(h))
    obs = U[:, :order] * np.sqrt(s[:order])
    shift, *_ = np.linalg.lstsq(obs[:-1], obs[1:], rcond=None)
    return np.linalg.eigvals(shift)


def _disc_residues(h, zs):
    m = np.arange(h.size)
    V = zs[None, :] ** m[:, None]
    r, *_ = np.linalg.lstsq(V, h, rcond=None)
    return r


def kung_unstable_poles(coeffs, mmap, error=None, max_order=20, unstable=None,
                        tol_rel=DEFAULT_TOL_REL, f_max=None, m_max=M_CAP,
                        hermitian=None):
    """Recover the right-half-plane poles from ``c_{-1}, c_{-2}, ...``.

    Parameters
    ----------
    coeffs : FourierCoefficients
    mmap : MoebiusMap
    error : ErrorEstimate, optional
        Interpolation-error estimate.  Its largest value, expressed in disc
        units, bounds the Hankel norm of the coefficient noise and therefore
        sets the singular-value cut when it exceeds ``tol_rel * sigma_1``.
        It also weights the residue fit.
    max_order : int
        Cap on the model order (at most 20).
    unstable : FullAxisFrf, optional
        Reconstructed unstable part.  When given together with ``error`` the
        residues are fitted to it on the axis with weights
        ``1/error``; otherwise they come from the coefficient sequence.
    tol_rel : float
        Relative singular-value cut.
    f_max : float, optional
        Upper band edge in Hz, used for the reliability flag.  Defaults to
        the frequency mapped to ``exp(j pi/4)``.
    hermitian : bool, optional
        Treat the coefficients as real (conjugate-symmetric data).  Detected
        from the imaginary parts when omitted.

    Raises
    ------
    OrderCapReached
        If more than ``max_order`` singular values pass the cut.
    """
    if not 0 < max_order <= 20:
        raise ValueError("max_order must be in 1..20")
    alpha = mmap.alpha
    if f_max is None:
        f_max = alpha / (2 * np.pi * (np.sqrt(2) - 1))
    h = np.array(coeffs.negative(m_max))
    if hermitian is None:
        scale = np.max(np.abs(h), initial=0.0)
        hermitian = scale == 0 or np.max(np.abs(h.imag)) <= 1e-6 * scale
    if hermitian:
        h = h.real.astype(complex)
    if h.size < 4 or not np.any(h):
        return PoleSet((), 0, np.zeros(0))

    s = np.linalg.svd(hankel_matrix(h), compute_uv=False)
    noise = 0.0
    if error is not None and error.freqs.size:
        z = mmap.z(error.freqs)
        noise = float(np.max(error.error / np.abs(mmap.to_axis_weight(z))))
    threshold = max(tol_rel * s[0], noise)
    order = int(np.sum(s > threshold))
    if order > max_order:
        raise OrderCapReached(
            f"{order} singular values above the cut, max_order is {max_order}",
            singular_values=s)
    if order == 0:
        return PoleSet((), 0, s, threshold)

    zs = kung_realization(h, order)
    if hermitian:
        # exact conjugate pairs from a real shift operator
        zs = np.where(np.abs(zs.imag) < 1e-12 * np.abs(zs), zs.real, zs)
    outside = np.abs(zs) >= 1
    if np.any(outside):
        warnings.warn(f"dropping {int(outside.sum())} disc pole(s) on or outside "
                      "the unit circle (noise fit)", DiscPoleOutside, stacklevel=2)
        zs = zs[~outside]
    lams = alpha * (1 + zs) / (1 - zs)
    keep = lams.real > 0
    zs, lams = zs[keep], lams[keep]
    if lams.size == 0:
        return PoleSet((), order, s, threshold, dropped=int(outside.sum()))

    if unstable is not None and error is not None and error.freqs.size:
        res = _axis_residues(unstable, error, lams)
    else:
        r = _disc_residues(h, zs)
        # r/(z - zh) in disc units is a/(s - lam) with a = -r (alpha + lam)/(2 sqrt(pi alpha))
        res = -r * (alpha + lams) / (2 * np.sqrt(np.pi * alpha))
    order_idx = np.lexsort((lams.imag, lams.real))
    poles = tuple(
        Pole(complex(lams[i]), complex(res[i]),
             reliable=bool(abs(lams[i].imag) / (2 * np.pi) <= RELIABLE_FRACTION * f_max))
        for i in order_idx)
    return PoleSet(poles, order, s, threshold, dropped=int(outside.sum()))


def _axis_residues(unstable, error, lams):
    pos = np.searchsorted(unstable.freqs, error.freqs)
    pos = np.clip(pos, 0, unstable.freqs.size - 1)
    match = unstable.freqs[pos] == error.freqs
    f = error.freqs[match]
    u = unstable.values[pos[match]]
    e = error.error[match]
    # an even/odd difference can vanish by accident; without a floor those
    # few samples would carry the whole fit
    floor = max(np.max(e, initial=0.0) * WEIGHT_FLOOR, np.finfo(float).tiny)
    w = 1.0 / np.maximum(e, floor)
    w /= np.max(w)
    s = 2j * np.pi * f
    A = 1.0 / (s[:, None] - lams[None, :])
    res, *_ = np.linalg.lstsq(A * w[:, None], u * w, rcond=None)
    return res


# -- local rational fitting --------------------------------------------------

@dataclass(frozen=True)
class LocalRationalModel:
    """``N(s)/D(s)`` with ``deg N = order - 1`` and monic ``D`` of degree ``order``.

    Coefficients are stored highest power first (``numpy.polyval`` order).
    """

    num: np.ndarray
    den: np.ndarray
    window: tuple
    max_phase_error_deg: float
    iterations: int = 0

    @property
    def order(self):
        return self.den.size - 1

    @property
    def poles(self):
        return np.roots(self.den)

    @property
    def zeros(self):
        return np.roots(self.num)

    def __call__(self, s):
        return np.polyval(self.num, s) / np.polyval(self.den, s)

    def has_unstable_pole(self):
        return bool(np.any(self.poles.real > 0))


def _window_data(frf, window):
    if isinstance(frf, (Frf, FullAxisFrf)):
        w, z = frf.omega, frf.values
    else:
        w, z = frf
    lo, hi = window
    sel = (w >= lo) & (w <= hi)
    return np.asarray(w[sel], float), np.asarray(z[sel], complex)


def _basis(sv, poles):
    """Real-coefficient partial-fraction basis for ``poles``.

    A real pole ``a`` gives ``1/(s - a)``; a pair ``a, conj(a)`` (stored once,
    ``Im a > 0``) gives ``1/(s - a) + 1/(s - a*)`` and ``j/(s - a) - j/(s - a*)``.
    """
    cols = []
    for a in poles:
        if a.imag == 0:
            cols.append(1 / (sv - a.real))
        else:
            p1, p2 = 1 / (sv - a), 1 / (sv - np.conj(a))
            cols += [p1 + p2, 1j * p1 - 1j * p2]
    return np.stack(cols, axis=1)


def _state_matrices(poles):
    n = sum(1 if a.imag == 0 else 2 for a in poles)
    A = np.zeros((n, n))
    b = np.zeros(n)
    i = 0
    for a in poles:
        if a.imag == 0:
            A[i, i] = a.real
            b[i] = 1
            i += 1
        else:
            A[i:i + 2, i:i + 2] = [[a.real, a.imag], [-a.imag, a.real]]
            b[i] = 2
            i += 2
    return A, b


def _canonical(roots):
    """One representative per conjugate pair (``Im > 0``) plus real roots."""
    roots = np.asarray(roots, dtype=complex)
    tol = 1e-10 * max(1.0, float(np.max(np.abs(roots), initial=1.0)))
    real = roots[np.abs(roots.imag) <= tol].real
    upper = roots[roots.imag > tol]
    return [complex(r) for r in np.sort(real)] + list(upper[np.argsort(upper.imag)])


def _lstsq_checked(A, b, order, check=True):
    Ar = np.vstack([A.real, A.imag])
    br = np.concatenate([b.real, b.imag])
    col = np.linalg.norm(Ar, axis=0)
    col[col == 0] = 1.0
    As = Ar / col
    sing = np.linalg.svd(As, compute_uv=False)
    cond = sing[0] / sing[-1] if sing[-1] > 0 else np.inf
    if check and cond ** 2 > COND_LIMIT:
        raise IllConditioned(
            f"normal system condition {cond ** 2:.2e} > {COND_LIMIT:.0e}; "
            f"try an order below {order}")
    x, *_ = np.linalg.lstsq(As, br, rcond=None)
    return x / col


def _expand(poles, coefs):
    """Numerator/denominator polynomials (real, descending) of sum coefs*basis."""
    full_p, full_r = [], []
    i = 0
    for a in poles:
        if a.imag == 0:
            full_p.append(a.real)
            full_r.append(coefs[i])
            i += 1
        else:
            r = coefs[i] + 1j * coefs[i + 1]
            full_p += [a, np.conj(a)]
            full_r += [r, np.conj(r)]
            i += 2
    full_p = np.array(full_p, dtype=complex)
    den = np.real(np.poly(full_p))
    num = np.zeros(full_p.size, dtype=complex)
    for k, r in enumerate(full_r):
        num += r * np.poly(np.delete(full_p, k))
    return np.real(num), den


def local_rational_fit(frf, window, order, iterations=30, refine=True):
    """Fit a real-coefficient rational model of type ``(order-1, order)``.

    Sanathanan-Koerner iterations are carried out in a partial-fraction
    basis: each pass solves ``sum c_i phi_i(s) - Z sum d_i phi_i(s) = Z`` in
    least squares (rows weighted by ``1/|Z|``) and relocates the poles to the
    zeros of ``1 + sum d_i phi_i``.  Unstable poles are kept as found.  The
    final residues are solved with the poles fixed; ``refine`` then polishes
    poles and residues together with Levenberg-Marquardt on the relative
    error.  Hermitian data on a symmetric window gives the same fit as the
    positive half alone.

    Parameters
    ----------
    frf : Frf, FullAxisFrf or (omega, values)
    window : (float, float)
        Fit interval in rad/s.
    order : int
        Denominator degree.

    Raises
    ------
    InsufficientGrid
        With fewer than ``4*order`` samples in the window.
    IllConditioned
        If the normal system's condition number exceeds ``1e14``.
    """
    w, z = _window_data(frf, window)
    if w.size < 4 * order:
        raise InsufficientGrid(f"{w.size} samples in window, need {4 * order}")
    w0 = float(np.max(np.abs(w)))
    sv = 1j * w / w0
    wt = 1.0 / np.abs(z)
    lo = max(float(np.min(np.abs(w))) / w0, 1e-3)
    beta = np.linspace(lo, 1.0, max(order // 2, 1))
    poles = [complex(-bb / 100, bb) for bb in beta[:order // 2]]
    if order % 2:
        poles = [complex(-0.5, 0.0)] + poles

    it = 0
    for it in range(1, iterations + 1):
        phi = _basis(sv, poles)
        x = _lstsq_checked(np.hstack([phi, -z[:, None] * phi]) * wt[:, None], z * wt,
                           order, check=False)
        ctil = x[order:]
        A, b = _state_matrices(poles)
        new = _canonical(np.linalg.eigvals(A - np.outer(b, ctil)))
        shift = max(abs(p - q) for p, q in zip(new, poles)) if len(new) == len(poles) else np.inf
        poles = new
        if shift < 1e-13:
            break
    phi = _basis(sv, poles)
    coefs = _lstsq_checked(phi * wt[:, None], z * wt, order)
    num_s, den_s = _expand(poles, coefs)

    if refine:
        def resid(x):
            e = np.polyval(x[:order], sv) / np.polyval(np.concatenate([[1.0], x[order:]]), sv)
            e = e / z - 1
            return np.concatenate([e.real, e.imag])

        x0 = np.concatenate([num_s, den_s[1:]])
        sol = optimize.least_squares(resid, x0, method="lm", xtol=1e-15, ftol=1e-15,
                                     gtol=1e-15, max_nfev=100 * (2 * order + 1))
        if np.sum(resid(sol.x) ** 2) < np.sum(resid(x0) ** 2):
            num_s = sol.x[:order]
            den_s = np.concatenate([[1.0], sol.x[order:]])

    # undo the frequency scaling: multiply through by w0^order
    num = num_s * w0 ** (order - np.arange(num_s.size - 1, -1, -1))
    den = den_s * w0 ** (order - np.arange(order, -1, -1))
    model_vals = np.polyval(num_s, sv) / np.polyval(den_s, sv)
    phase = float(np.max(np.abs(np.angle(model_vals / z, deg=True))))
    return LocalRationalModel(num, den, (float(window[0]), float(window[1])), phase, it)
