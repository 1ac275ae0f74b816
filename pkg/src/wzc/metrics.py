"""Quality and rate measurements: MSE, PSNR, compression ratio, bits per pixel."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pixmap import Pixmap

PEAK = 255.0


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float  # math.inf when mse == 0
    cr_percent: float
    bpp: float
    original_bytes: int
    compressed_bytes: int


def mse(a: Pixmap, b: Pixmap) -> float:
    """Mean squared error over all samples (all channels jointly)."""
    if (a.width, a.height, a.channels) != (b.width, b.height, b.channels):
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height}x{a.channels} vs "
            f"{b.width}x{b.height}x{b.channels}"
        )
    da = a.samples.astype(np.float64)
    db = b.samples.astype(np.float64)
    return float(np.mean((da - db) ** 2))


def psnr(mse_value: float) -> float:
    """10 * log10(255^2 / MSE), infinite for a perfect reconstruction."""
    if mse_value < 0:
        raise ValueError("MSE cannot be negative")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse_value)


def compression_ratio(
    original_bytes: int,
    compressed_bytes: int,
    pixel_geometry: tuple[int, int, int] | None = None,
) -> tuple[float, float | None]:
    """(percent of original size, bits per pixel sample).

    cr_percent = 100 * compressed / original, so smaller means more
    compression. bpp requires (width, height, channels).
    """
    if original_bytes <= 0 or compressed_bytes <= 0:
        raise ValueError("byte counts must be positive")
    cr_percent = 100.0 * compressed_bytes / original_bytes
    bpp = None
    if pixel_geometry is not None:
        w, h, c = pixel_geometry
        bpp = 8.0 * compressed_bytes / (w * h * c)
    return cr_percent, bpp


def quality_report(
    original: Pixmap,
    reconstructed: Pixmap,
    compressed_bytes: int,
    original_bytes: int,
) -> QualityReport:
    e = mse(original, reconstructed)
    cr, bpp = compression_ratio(
        original_bytes,
        compressed_bytes,
        (original.width, original.height, original.channels),
    )
    return QualityReport(
        mse=e,
        psnr=psnr(e),
        cr_percent=cr,
        bpp=bpp,
        original_bytes=original_bytes,
        compressed_bytes=compressed_bytes,
    )
