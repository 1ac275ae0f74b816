"""Embedded wavelet zerotree image codec: transforms, coders, container, metrics."""

from .bench import PAPER_TABLES, SweepConfig, run_sweep, verify_paper_tables
from .bitstream import BitReader, BitWriter, ContainerHeader, parse_container, serialize_container
from .dwt import CoefficientPyramid, WaveletKind, forward_dwt_2d, inverse_dwt_2d
from .metrics import QualityReport, compression_ratio, mse, psnr
from .pipeline import DecodedImage, compress_pixmap, decompress_container
from .pixmap import Colorspace, Pixmap, read_pixmap, rgb_to_ycbcr, write_pixmap, ycbcr_to_rgb
from .spiht import spiht_decode, spiht_encode
from .stw import stw_decode, stw_encode
from .zerotree import SubbandLayout, initial_bitplane, is_significant

__version__ = "0.1.0"

__all__ = [
    "PAPER_TABLES",
    "SweepConfig",
    "run_sweep",
    "verify_paper_tables",
    "BitReader",
    "BitWriter",
    "ContainerHeader",
    "parse_container",
    "serialize_container",
    "CoefficientPyramid",
    "WaveletKind",
    "forward_dwt_2d",
    "inverse_dwt_2d",
    "QualityReport",
    "compression_ratio",
    "mse",
    "psnr",
    "DecodedImage",
    "compress_pixmap",
    "decompress_container",
    "Colorspace",
    "Pixmap",
    "read_pixmap",
    "rgb_to_ycbcr",
    "write_pixmap",
    "ycbcr_to_rgb",
    "spiht_decode",
    "spiht_encode",
    "stw_decode",
    "stw_encode",
    "SubbandLayout",
    "initial_bitplane",
    "is_significant",
    "__version__",
]
