import numpy as np
import pytest

from stabproj.bandlimit import (IDENTITY, FilterSpec, RationalFilter, apply_filter,
                                design_band_filter, design_elliptic_lowpass, design_filter,
                                evaluate)
from stabproj.errors import BandTooNarrow, InfeasibleSpec, InvalidSpec
from stabproj.frf import Frf, hermitian_extend

LP = FilterSpec(f_max=50e9)
BP = FilterSpec(kind="bandpass", f_min=1e6, f_max=50e9)


def _sweep(flt, lo, hi, n=10_000):
    w = np.linspace(lo, hi, n)
    return w, np.abs(flt(1j * w))


@pytest.mark.parametrize("kw", [
    dict(kind="highpass", f_max=1.0),
    dict(order=9, f_max=1.0),
    dict(order=2, f_max=1.0),
    dict(order=22, f_max=1.0),
    dict(f_max=-1.0),
    dict(kind="bandpass", f_max=1.0),
    dict(kind="bandpass", f_min=2.0, f_max=1.0),
    dict(passband_ripple_db=0.0, f_max=1.0),
    dict(stopband_atten_db=40.0, f_max=1.0),
])
def test_spec_validation(kw):
    with pytest.raises(InvalidSpec):
        FilterSpec(**kw)


def test_lowpass_zero_at_fmax():
    flt = design_elliptic_lowpass(LP)
    assert abs(evaluate(flt, [50e9])[0]) < 1e-10
    assert np.min(np.abs(flt.zeros.imag)) == 2 * np.pi * 50e9
    assert np.all(np.abs(flt.zeros.imag) >= 2 * np.pi * 50e9)
    assert np.all(flt.zeros.real == 0)


@pytest.mark.parametrize("order", [4, 6, 10, 14, 20])
@pytest.mark.parametrize("atten", [60.0, 100.0])
def test_lowpass_stable_for_any_valid_spec(order, atten):
    flt = design_filter(FilterSpec(order=order, f_max=1e9, stopband_atten_db=atten))
    assert flt.is_stable()
    assert flt.order == order


def test_lowpass_passband_and_stopband_levels():
    flt = design_elliptic_lowpass(LP)
    (p_lo, p_hi), = flt.passbands
    (s_lo, _), = flt.stopbands
    _, mag = _sweep(flt, p_lo, p_hi)
    assert mag.min() >= 10 ** (-0.1 / 20) - 1e-6
    assert mag.max() <= 1 + 1e-6
    # stopband from its edge to 50x beyond
    _, mag = _sweep(flt, s_lo, 50 * s_lo)
    assert mag.max() <= 10 ** (-100 / 20) + 1e-6
    # the stopband edge lies below the pinned zero
    assert s_lo <= 2 * np.pi * 50e9


def test_lowpass_dc_gain_within_ripple():
    flt = design_elliptic_lowpass(LP)
    h0 = abs(evaluate(flt, [0.0])[0])
    assert 10 ** (-0.1 / 20) - 1e-12 <= h0 <= 1 + 1e-12


def test_evaluate_hermitian_symmetry():
    flt = design_filter(BP)
    f = np.logspace(3, 11, 200)
    hp, hm = evaluate(flt, f), evaluate(flt, -f)
    np.testing.assert_allclose(hm, np.conj(hp), rtol=1e-14, atol=0)


def test_band_filter_zeros_and_center():
    flt = design_band_filter(BP)
    assert flt.is_stable()
    assert flt.order == 2 * BP.order
    assert np.all(np.abs(evaluate(flt, [1e6, 50e9])) < 1e-10)
    center = abs(evaluate(flt, [np.sqrt(1e6 * 50e9)])[0])
    assert abs(20 * np.log10(center)) <= 2 * 0.1 + 1e-9
    (p_lo, p_hi), = flt.passbands
    _, mag = _sweep(flt, p_lo, p_hi)
    assert mag.max() <= 1 + 1e-6


def test_band_filter_too_narrow():
    with pytest.raises(BandTooNarrow):
        design_band_filter(FilterSpec(kind="bandpass", f_min=1e9, f_max=1.1e9))


def test_wrong_kind_for_designer():
    with pytest.raises(InvalidSpec):
        design_elliptic_lowpass(BP)
    with pytest.raises(InvalidSpec):
        design_band_filter(LP)


def test_infeasible_spec_carries_required_order():
    exc = InfeasibleSpec("x", required_order=12)
    assert exc.required_order == 12


def test_conjugate_closure():
    flt = design_filter(BP)
    for arr in (flt.zeros, flt.poles):
        assert np.allclose(np.sort_complex(arr), np.sort_complex(np.conj(arr)))


def test_apply_filter_identity_and_square():
    f = np.linspace(0, 60e9, 301)
    one = hermitian_extend(Frf(f, np.ones(f.size)))
    flt = design_filter(LP)
    once = apply_filter(one, flt)
    np.testing.assert_array_equal(once.values, evaluate(flt, once.freqs))
    twice = apply_filter(once, flt)
    np.testing.assert_allclose(twice.values, evaluate(flt, once.freqs) ** 2, rtol=1e-15, atol=0)
    assert apply_filter(one, IDENTITY).values.tolist() == one.values.tolist()


def test_apply_filter_decays_outside_band():
    f = np.linspace(0, 200e9, 2001)
    z = hermitian_extend(Frf(f, 10.0 / (1 + 1j * f / 1e10)))
    flt = design_filter(LP)
    out = apply_filter(z, flt)
    (s_lo, _), = flt.stopbands
    outside = np.abs(out.omega) >= s_lo
    assert np.max(np.abs(out.values[outside])) <= 10 ** (-100 / 20) * np.max(np.abs(z.values))


def test_apply_filter_needs_full_axis():
    with pytest.raises(TypeError):
        apply_filter(Frf(np.arange(8.0), np.ones(8)), IDENTITY)


def test_product_filter_evaluates_as_product():
    a = RationalFilter([1j, -1j], [-1 + 2j, -1 - 2j], 2.0)
    b = RationalFilter([], [-3.0], 3.0)
    s = 1j * np.linspace(-5, 5, 11)
    np.testing.assert_allclose((a * b)(s), a(s) * b(s), rtol=1e-15)
