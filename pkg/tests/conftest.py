import pathlib

import numpy as np
import pytest

from wzc.dwt import CoefficientPyramid, WaveletKind
from wzc.pixmap import read_pixmap

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def scene():
    return read_pixmap((DATA_DIR / "scene256.ppm").read_bytes())


def make_pyramid(rng, size, levels, span=1000, density=0.4, wavelet=WaveletKind.HAAR):
    """Random integer-valued pyramid with a controllable fraction of zeros."""
    mags = rng.integers(-span, span + 1, size=(size, size)).astype(np.float64)
    mask = rng.random((size, size)) < density
    mags = mags * mask
    return CoefficientPyramid(size, size, levels, wavelet, mags)
