import math

import numpy as np
import pytest

from wzc.metrics import compression_ratio, mse, psnr, quality_report
from wzc.pixmap import gray


def _g(values):
    return gray(np.asarray(values, dtype=np.uint8))


def test_mse_identical_is_zero():
    a = _g([[5, 10], [200, 30]])
    assert mse(a, a) == 0.0


def test_mse_extreme_single_pixel():
    assert mse(_g([[0]]), _g([[255]])) == 65025.0


def test_mse_arithmetic():
    assert mse(_g([[0, 0]]), _g([[3, 4]])) == pytest.approx(12.5)


def test_mse_symmetric():
    rng = np.random.default_rng(1)
    a = _g(rng.integers(0, 256, (8, 8), dtype=np.uint8))
    b = _g(rng.integers(0, 256, (8, 8), dtype=np.uint8))
    assert mse(a, b) == mse(b, a)


def test_mse_dimension_mismatch():
    with pytest.raises(ValueError):
        mse(_g([[0]]), _g([[0, 1]]))


def test_psnr_paper_values():
    assert psnr(4.387) == pytest.approx(41.71, abs=0.01)
    assert psnr(0.9114) == pytest.approx(48.53, abs=0.01)
    assert psnr(868.6) == pytest.approx(18.74, abs=0.01)


def test_psnr_edges():
    assert psnr(65025) == pytest.approx(0.0)
    assert psnr(0) == math.inf
    with pytest.raises(ValueError):
        psnr(-1)


def test_psnr_strictly_decreasing():
    values = [0.01, 0.5, 1, 4.387, 100, 5000, 65025]
    out = [psnr(v) for v in values]
    assert all(a > b for a, b in zip(out, out[1:]))


def test_compression_ratio():
    assert compression_ratio(100, 100)[0] == 100.0
    assert compression_ratio(100, 50)[0] == 50.0
    cr, bpp = compression_ratio(18841, 9216)
    assert cr == pytest.approx(48.91, abs=0.01)
    assert bpp is None


def test_bpp_geometry():
    cr, bpp = compression_ratio(1000, 512, (16, 16, 2))
    assert bpp == pytest.approx(8 * 512 / (16 * 16 * 2))
    with pytest.raises(ValueError):
        compression_ratio(0, 10)
    with pytest.raises(ValueError):
        compression_ratio(10, 0)


def test_quality_report_fields():
    a = _g([[0, 0]])
    b = _g([[3, 4]])
    rep = quality_report(a, b, compressed_bytes=7, original_bytes=14)
    assert rep.mse == pytest.approx(12.5)
    assert rep.cr_percent == pytest.approx(50.0)
    assert rep.compressed_bytes == 7
    assert rep.original_bytes == 14
    assert rep.psnr == pytest.approx(psnr(12.5))
