import numpy as np
import pytest

from wzc.dwt import (
    CoefficientPyramid,
    WaveletKind,
    forward_1d,
    forward_dwt_2d,
    inverse_1d,
    inverse_dwt_2d,
)

SQRT2 = np.sqrt(2.0)


def test_haar_constant_pair():
    a, d = forward_1d([5.0, 5.0], WaveletKind.HAAR)
    assert a[0] == pytest.approx(5.0 * SQRT2)
    assert d[0] == 0.0


def test_haar_antisymmetric_pair():
    a, d = forward_1d([1.0, -1.0], WaveletKind.HAAR)
    assert a[0] == pytest.approx(0.0)
    assert d[0] == pytest.approx(SQRT2)


def test_cdf97_constant_detail_vanishes():
    for value in (1.0, 100.0, -37.5):
        a, d = forward_1d(np.full(8, value), WaveletKind.CDF97)
        assert np.abs(d).max() < 1e-12
        assert np.allclose(a, value * SQRT2, atol=1e-12)


def test_haar_inverse_example():
    out = inverse_1d([SQRT2], [0.0], WaveletKind.HAAR)
    assert np.allclose(out, [1.0, 1.0])


def test_cdf97_zero_in_zero_out():
    assert np.all(inverse_1d(np.zeros(8), np.zeros(8), WaveletKind.CDF97) == 0)


@pytest.mark.parametrize("wavelet", [WaveletKind.HAAR, WaveletKind.CDF97])
def test_roundtrip_1d_random(wavelet):
    rng = np.random.default_rng(5)
    for _ in range(20):
        s = rng.normal(0, 100, size=64)
        a, d = forward_1d(s, wavelet)
        assert np.abs(inverse_1d(a, d, wavelet) - s).max() <= 1e-9


def test_forward_1d_validates_length():
    with pytest.raises(ValueError):
        forward_1d([1.0], WaveletKind.HAAR)
    with pytest.raises(ValueError):
        forward_1d([1.0, 2.0, 3.0], WaveletKind.HAAR)
    with pytest.raises(ValueError):
        inverse_1d([1.0], [2.0, 3.0], WaveletKind.HAAR)


def test_constant_2d_haar_concentrates_in_ll():
    v = 3.25
    p = forward_dwt_2d(np.full((8, 8), v), 3, WaveletKind.HAAR)
    assert p.coeffs[0, 0] == pytest.approx(8 * v, abs=1e-12)
    rest = p.coeffs.copy()
    rest[0, 0] = 0.0
    assert np.abs(rest).max() < 1e-12


def test_single_ll_coefficient_inverts_to_constant():
    coeffs = np.zeros((8, 8))
    coeffs[0, 0] = 8 * 3.25
    p = CoefficientPyramid(8, 8, 3, WaveletKind.HAAR, coeffs)
    assert np.allclose(inverse_dwt_2d(p), 3.25, atol=1e-12)


def test_zero_matrix_zero_pyramid():
    p = forward_dwt_2d(np.zeros((16, 16)), 2, WaveletKind.CDF97)
    assert np.all(p.coeffs == 0)
    assert np.all(inverse_dwt_2d(p) == 0)


def test_cdf97_constant_2d_details_vanish():
    p = forward_dwt_2d(np.full((32, 32), 200.0), 3, WaveletKind.CDF97)
    detail = p.coeffs.copy()
    detail[:4, :4] = 0.0
    assert np.abs(detail).max() < 1e-10


def test_haar_energy_conservation():
    rng = np.random.default_rng(6)
    x = rng.normal(0, 50, size=(16, 16))
    p = forward_dwt_2d(x, 2, WaveletKind.HAAR)
    assert np.sum(p.coeffs**2) == pytest.approx(np.sum(x**2), rel=1e-9)


@pytest.mark.parametrize("wavelet", [WaveletKind.HAAR, WaveletKind.CDF97])
@pytest.mark.parametrize("levels", [1, 2, 3, 4, 5, 6])
def test_roundtrip_2d(wavelet, levels):
    rng = np.random.default_rng(40 + levels)
    x = rng.normal(0, 80, size=(64, 64))
    p = forward_dwt_2d(x, levels, wavelet)
    assert np.abs(inverse_dwt_2d(p) - x).max() <= 1e-8


def test_roundtrip_non_square():
    rng = np.random.default_rng(8)
    x = rng.normal(0, 10, size=(32, 64))
    p = forward_dwt_2d(x, 3, WaveletKind.CDF97)
    assert np.abs(inverse_dwt_2d(p) - x).max() <= 1e-8


@pytest.mark.parametrize("wavelet", [WaveletKind.HAAR, WaveletKind.CDF97])
def test_linearity(wavelet):
    rng = np.random.default_rng(9)
    x = rng.normal(size=(16, 16))
    y = rng.normal(size=(16, 16))
    a, b = 2.5, -1.25
    lhs = forward_dwt_2d(a * x + b * y, 2, wavelet).coeffs
    rhs = a * forward_dwt_2d(x, 2, wavelet).coeffs + b * forward_dwt_2d(y, 2, wavelet).coeffs
    assert np.abs(lhs - rhs).max() <= 1e-9


def test_divisibility_enforced():
    with pytest.raises(ValueError):
        forward_dwt_2d(np.zeros((12, 12)), 3, WaveletKind.HAAR)
    with pytest.raises(ValueError):
        CoefficientPyramid(12, 12, 3, WaveletKind.HAAR, np.zeros((12, 12)))


def test_cdf97_length_two_roundtrip():
    a, d = forward_1d([3.0, 7.0], WaveletKind.CDF97)
    assert np.abs(inverse_1d(a, d, WaveletKind.CDF97) - [3.0, 7.0]).max() <= 1e-12
