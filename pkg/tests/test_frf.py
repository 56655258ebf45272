import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from stabproj.errors import GridMismatch, InvalidGrid, NonRealDc
from stabproj.frf import Frf, FullAxisFrf, hermitian_extend, recombine_ssb, split_ssb


def _frf(values, freqs=None, b=0):
    values = np.asarray(values, dtype=complex)
    if freqs is None:
        freqs = np.arange(1, values.size + 1, dtype=float)
    return Frf(freqs, values, b=b)


def test_grid_kind_detection():
    assert _frf(np.ones(10)).grid_kind == "linear"
    assert Frf(np.logspace(3, 6, 10), np.ones(10)).grid_kind == "logarithmic"
    assert Frf(np.array([1, 2, 4, 5, 9, 10, 13, 20.0]), np.ones(8)).grid_kind == "irregular"


@pytest.mark.parametrize("freqs, values", [
    (np.arange(7.0), np.ones(7)),                              # too short
    (np.array([0, 1, 2, 3, 3, 4, 5, 6.0]), np.ones(8)),       # repeated
    (np.arange(8.0)[::-1], np.ones(8)),                        # decreasing
    (np.arange(8.0) - 1, np.ones(8)),                          # negative
    (np.arange(8.0), np.r_[np.ones(7), np.nan]),               # NaN value
    (np.r_[np.arange(7.0), np.inf], np.ones(8)),               # Inf frequency
])
def test_frf_rejects_invalid_grids(freqs, values):
    with pytest.raises(InvalidGrid):
        Frf(freqs, values)


def test_frf_arrays_are_read_only():
    frf = _frf(np.ones(8))
    with pytest.raises(ValueError):
        frf.values[0] = 2


def test_extend_conjugates_mirror():
    v = np.full(8, 1 + 0j)
    v[0] = 3 + 4j
    full = hermitian_extend(_frf(v))
    i = np.flatnonzero(full.freqs == -1.0)[0]
    assert full.values[i] == 3 - 4j
    assert full.is_hermitian()


def test_extend_constant_with_and_without_dc():
    no_dc = hermitian_extend(Frf(np.arange(1, 11.0), np.full(10, 5.0)))
    with_dc = hermitian_extend(Frf(np.arange(10.0), np.full(10, 5.0)))
    assert len(no_dc) == 20 and not no_dc.has_dc
    assert len(with_dc) == 19 and with_dc.has_dc
    assert np.all(with_dc.values == 5.0)


def test_extend_rejects_complex_dc():
    v = np.ones(8, dtype=complex)
    v[0] = 1 + 0.5j
    with pytest.raises(NonRealDc):
        hermitian_extend(Frf(np.arange(8.0), v))


def test_extend_tolerates_roundoff_at_dc():
    v = np.ones(8, dtype=complex)
    v[0] = 1 + 1e-12j
    assert hermitian_extend(Frf(np.arange(8.0), v)).values[7] == 1.0


def test_extend_is_idempotent():
    rng = np.random.default_rng(1)
    frf = Frf(np.arange(12.0), np.r_[2.0, rng.standard_normal(11) + 1j * rng.standard_normal(11)])
    once = hermitian_extend(frf)
    assert hermitian_extend(once) is once
    np.testing.assert_array_equal(once.positive().values, frf.values)


def test_extend_rejects_asymmetric_full_axis():
    f = np.arange(-4.0, 5.0)
    with pytest.raises(InvalidGrid):
        hermitian_extend(FullAxisFrf(f, f + 1j))


def test_recombine_identical_inputs():
    rng = np.random.default_rng(2)
    F = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    zb, zmb = recombine_ssb(_frf(F, b=1), _frf(F, b=-1))
    np.testing.assert_allclose(zb.values, F, rtol=0, atol=1e-15)
    np.testing.assert_array_equal(zmb.values, 0)
    assert (zb.b, zmb.b) == (1, -1)


def test_recombine_single_point_values():
    zb, zmb = recombine_ssb(_frf(np.full(8, 2.0), b=1), _frf(np.zeros(8), b=-1))
    assert zb.values[0] == 1.0
    assert zmb.values[0] == 1j


def test_recombine_against_direct_evaluation():
    rng = np.random.default_rng(3)
    a = rng.standard_normal(50) + 1j * rng.standard_normal(50)
    c = rng.standard_normal(50) + 1j * rng.standard_normal(50)
    zb, zmb = recombine_ssb(_frf(a, b=2), _frf(c, b=-2))
    for k in range(50):
        assert abs(zb.values[k] - (a[k] + c[k]) / 2) <= 1e-15 * abs(a[k] + c[k])
        assert abs(zmb.values[k] - (1j * a[k] - 1j * c[k]) / 2) <= 1e-15 * abs(a[k] - c[k])


def test_recombine_grid_mismatch():
    f = np.arange(1, 9.0)
    with pytest.raises(GridMismatch):
        recombine_ssb(Frf(f, np.ones(8), b=1), Frf(f * (1 + 1e-9), np.ones(8), b=-1))
    with pytest.raises(GridMismatch):
        recombine_ssb(Frf(f, np.ones(8), b=1), Frf(np.arange(1, 10.0), np.ones(9), b=-1))


def test_recombine_needs_positive_index():
    with pytest.raises(ValueError):
        recombine_ssb(_frf(np.ones(8), b=0), _frf(np.ones(8), b=0))


complex_vec = arrays(np.complex128, 16, elements=st.complex_numbers(
    max_magnitude=1e6, allow_nan=False, allow_infinity=False))


@settings(max_examples=50, deadline=None)
@given(complex_vec, complex_vec, complex_vec, complex_vec,
       st.floats(-10, 10), st.floats(-10, 10))
def test_recombine_is_linear(x1, x2, y1, y2, a, c):
    X = recombine_ssb(_frf(x1, b=1), _frf(x2, b=-1))
    Y = recombine_ssb(_frf(y1, b=1), _frf(y2, b=-1))
    Z = recombine_ssb(_frf(a * x1 + c * y1, b=1), _frf(a * x2 + c * y2, b=-1))
    for k in range(2):
        expect = a * X[k].values + c * Y[k].values
        scale = abs(a) * (np.abs(x1) + np.abs(x2)) + abs(c) * (np.abs(y1) + np.abs(y2))
        assert np.all(np.abs(Z[k].values - expect) <= 4e-16 * scale + 1e-300)


@settings(max_examples=50, deadline=None)
@given(complex_vec, complex_vec)
def test_recombine_then_split_round_trips(p, m):
    zp, zm = split_ssb(*recombine_ssb(_frf(p, b=3), _frf(m, b=-3)))
    scale = np.max(np.abs(np.r_[p, m]), initial=0.0)
    assert np.all(np.abs(zp.values - p) <= 1e-14 * scale)
    assert np.all(np.abs(zm.values - m) <= 1e-14 * scale)
    assert (zp.b, zm.b) == (3, -3)
