import cmath
import math

import numpy as np
import pytest

from stabproj.bandlimit import IDENTITY, FilterSpec, design_filter
from stabproj.errors import BadSpec, MultiplePole
from stabproj.synth import (PolesResiduesSystem, analytic_split, appendix_fun,
                            appendix_function, eval_frf, period_doubling_system,
                            random_mixed_system, random_system)

F0, SIGMA = 1e9, 2 * np.pi * 1e7
BAND = (1e8, 5e9)


def test_stable_random_system():
    sysm = random_system(40, BAND, seed=1)
    assert np.all(sysm.poles.real < 0)
    assert sysm.order == 40


def test_random_system_is_deterministic():
    a = random_system(50, BAND, 1, (F0, SIGMA), seed=7)
    b = random_system(50, BAND, 1, (F0, SIGMA), seed=7)
    np.testing.assert_array_equal(a.poles, b.poles)
    np.testing.assert_array_equal(a.residues, b.residues)
    c = random_system(50, BAND, 1, (F0, SIGMA), seed=8)
    assert not np.array_equal(a.poles, c.poles)


def test_planted_pair_exact():
    sysm = random_system(202, BAND, 1, (F0, SIGMA), seed=0)
    rhp = sysm.poles[sysm.poles.real > 0]
    assert rhp.size == 2
    np.testing.assert_array_equal(np.sort_complex(rhp),
                                  [SIGMA - 2j * np.pi * F0, SIGMA + 2j * np.pi * F0])


def test_random_system_ranges():
    sysm = random_system(400, BAND, seed=3)
    w_max = 2 * np.pi * BAND[1]
    re = -sysm.poles.real / w_max
    assert re.min() >= 1e-3 and re.max() <= 1e-1
    im = np.abs(sysm.poles.imag[sysm.poles.imag != 0]) / (2 * np.pi)
    assert im.min() >= BAND[0] and im.max() <= BAND[1]


def test_random_system_hermitian():
    sysm = random_system(21, BAND, 1, (F0, SIGMA), seed=2)
    s = 2j * np.pi * np.linspace(1e7, 5e9, 50)
    np.testing.assert_allclose(sysm(-s), np.conj(sysm(s)), rtol=1e-12)


@pytest.mark.parametrize("kw", [
    dict(n_unstable_pairs=1, unstable_spec=(F0, 0.0)),
    dict(n_unstable_pairs=1, unstable_spec=(F0, -SIGMA)),
    dict(n_unstable_pairs=1, unstable_spec=(9e9, SIGMA)),
    dict(n_unstable_pairs=1),
    dict(n_unstable_pairs=2, unstable_spec=[(F0, SIGMA)] * 3),
])
def test_random_system_errors(kw):
    with pytest.raises(BadSpec):
        random_system(20, BAND, seed=0, **kw)


def test_random_system_order_too_small():
    with pytest.raises(BadSpec):
        random_system(3, BAND, 1, (F0, SIGMA))
    with pytest.raises(BadSpec):
        random_system(10, (5e9, 1e8))


def test_eval_single_term():
    frf = eval_frf(PolesResiduesSystem([-1.0], [1.0]), np.arange(8.0))
    assert frf.values[0] == 1.0


def test_eval_delay_changes_phase_only():
    sysm = random_system(30, BAND, 1, (F0, SIGMA), seed=4)
    f = np.linspace(0, 5e9, 500)
    z0 = eval_frf(sysm, f).values
    z1 = eval_frf(sysm.with_delay(2e-9), f).values
    np.testing.assert_allclose(np.abs(z1), np.abs(z0), rtol=1e-13)
    np.testing.assert_allclose(z1, z0 * np.exp(-2j * np.pi * f * 2e-9), rtol=1e-13)


def test_eval_matches_compensated_term_sum():
    sysm = random_system(202, BAND, 1, (F0, SIGMA), seed=0, delay=2e-9)
    f = np.linspace(0, 5e9, 5000)
    frf = eval_frf(sysm, f)
    assert np.all(np.isfinite(frf.values))
    for i in range(0, 5000, 499):
        s = 2j * math.pi * f[i]
        terms = [complex(r) / (s - complex(p)) for p, r in zip(sysm.poles, sysm.residues)]
        total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
        total *= cmath.exp(-s * 2e-9)
        assert abs(frf.values[i] - total) <= 1e-12 * max(abs(total), 1.0)


def test_appendix_function_values():
    assert abs(appendix_function(0.0) - (-1 / (5 ** 15 / 9.9281e10))) < 1e-12
    assert abs(appendix_function(0.0) - (-3.2533)) < 1e-4
    w = np.linspace(0.01, 1, 50)
    np.testing.assert_allclose(appendix_function(-1j * w), np.conj(appendix_function(1j * w)),
                               rtol=1e-14)
    frf = appendix_fun(w)
    np.testing.assert_allclose(frf.freqs, w / (2 * np.pi))
    np.testing.assert_array_equal(frf.values, appendix_function(1j * w))


def test_period_doubling_poles():
    sysm = period_doubling_system()
    assert np.all(sysm.poles.real > 0)
    f = np.sort(np.unique(np.abs(sysm.poles.imag))) / (2 * np.pi)
    np.testing.assert_allclose(f, [50e3, 150e3, 250e3])


def test_random_mixed_system_distance():
    f_max = 1e9
    alpha = 2 * np.pi * f_max * (np.sqrt(2) - 1)
    for seed in range(10):
        sysm = random_mixed_system(10, f_max, seed=seed)
        assert sysm.order <= 10
        assert np.min(np.abs(sysm.poles.real)) >= 0.05 * alpha
        assert np.any(sysm.poles.real > 0) and np.any(sysm.poles.real < 0)


def test_split_stable_only():
    sysm = random_system(20, BAND, seed=5)
    split = analytic_split(sysm, design_filter(FilterSpec(f_max=5e9)))
    assert split.unstable.poles.size == 0
    assert np.all(split.unstable_at(np.linspace(0, 5e9, 20)) == 0)


def test_split_single_unstable_pole_identity_filter():
    split = analytic_split(PolesResiduesSystem([1.0], [1.0]), IDENTITY)
    np.testing.assert_array_equal(split.unstable.poles, [1.0])
    np.testing.assert_array_equal(split.unstable.residues, [1.0])
    assert split.stable.poles.size == 0


def test_split_sums_to_product():
    rng = np.random.default_rng(6)
    flt = design_filter(FilterSpec(f_max=1e9))
    for seed in range(5):
        sysm = random_mixed_system(10, 1e9, seed=seed)
        split = analytic_split(sysm, flt)
        f = rng.uniform(-2e9, 2e9, 1000)
        total = split.total_at(f)
        got = split.stable.__call__(2j * np.pi * f) + split.unstable_at(f)
        assert np.max(np.abs(got - total)) <= 1e-10 * np.max(np.abs(total))


def test_split_repeated_pole_without_delay():
    sysm = PolesResiduesSystem([-2.0, -2.0, 1 + 3j, 1 - 3j], [1.0, 0.5, 2 - 1j, 2 + 1j],
                               [1, 3, 2, 2])
    flt = design_filter(FilterSpec(f_max=5.0))
    split = analytic_split(sysm, flt)
    f = np.linspace(-3, 3, 101)
    total = split.total_at(f)
    got = split.stable(2j * np.pi * f) + split.unstable_at(f)
    assert np.max(np.abs(got - total)) <= 1e-10 * np.max(np.abs(total))
    assert set(split.unstable.multiplicities) == {1, 2}


def test_split_repeated_pole_with_delay_rejected():
    sysm = PolesResiduesSystem([1.0], [1.0], [2], delay=1e-3)
    with pytest.raises(MultiplePole):
        analytic_split(sysm, IDENTITY)


def _cauchy_residue(func, center, radius, n=256):
    t = 2 * np.pi * np.arange(n) / n
    s = center + radius * np.exp(1j * t)
    # (1 / 2 pi j) * contour integral, trapezoid rule on the circle
    return np.mean(func(s) * radius * np.exp(1j * t))


def test_split_delay_residue_against_contour_integral():
    lam, tau = 0.3 + 2.0j, 0.7
    sysm = PolesResiduesSystem([lam], [1.0], delay=tau)
    split = analytic_split(sysm, IDENTITY)
    oracle = _cauchy_residue(lambda s: np.exp(-s * tau) / (s - lam), lam, 0.1)
    assert abs(split.unstable.residues[0] - oracle) < 1e-13
    assert abs(split.unstable.residues[0] - np.exp(-lam * tau)) < 1e-15
    # the remainder has no singularity at lam
    rest = lambda s: sysm(s) - split.unstable(s)
    assert abs(_cauchy_residue(rest, lam, 0.1)) < 1e-13
    assert split.stable is None


def test_split_with_filter_uses_filter_value_at_pole():
    lam = 2 * np.pi * (1e7 + 3e8j)
    flt = design_filter(FilterSpec(f_max=1e9))
    split = analytic_split(PolesResiduesSystem([lam], [5.0], delay=1e-9), flt)
    oracle = _cauchy_residue(lambda s: 5.0 * np.exp(-s * 1e-9) * flt(s) / (s - lam), lam,
                             0.01 * abs(lam.real))
    assert abs(split.unstable.residues[0] - oracle) <= 1e-10 * abs(oracle)


def test_split_shared_pole_rejected():
    flt = design_filter(FilterSpec(f_max=1.0))
    with pytest.raises(BadSpec):
        analytic_split(PolesResiduesSystem([flt.poles[0]], [1.0]), flt)


def test_system_validation():
    with pytest.raises(BadSpec):
        PolesResiduesSystem([1.0, 2.0], [1.0])
    with pytest.raises(BadSpec):
        PolesResiduesSystem([1.0], [1.0], [0])
    with pytest.raises(BadSpec):
        PolesResiduesSystem([1.0], [1.0], delay=-1.0)
    with pytest.raises(BadSpec):
        PolesResiduesSystem([1.0], [1.0], delay=1.0) + PolesResiduesSystem([2.0], [1.0])
