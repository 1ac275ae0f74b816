"""End-to-end compression pipeline: image -> container bytes and back.

Per channel: (optional RGB->YCbCr) -> 2-D DWT -> integer rounding inside the
coder -> bit-plane coding -> container payload. Decompression mirrors each
step; reconstructed samples are rounded half-up and clamped to [0, 255].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitstream
from .bitstream import ContainerHeader, parse_container, serialize_container
from .dwt import WaveletKind, forward_dwt_2d, inverse_dwt_2d
from .pixmap import Colorspace, Pixmap, from_planes, gray, rgb_to_ycbcr, ycbcr_to_rgb
from .spiht import spiht_decode, spiht_encode
from .stw import stw_decode, stw_encode
from .zerotree import SubbandLayout

CODEC_IDS = {"spiht": bitstream.CODEC_SPIHT, "stw": bitstream.CODEC_STW}
CODEC_NAMES = {v: k for k, v in CODEC_IDS.items()}
WAVELET_IDS = {"haar": bitstream.WAVELET_HAAR, "cdf97": bitstream.WAVELET_CDF97}
WAVELET_NAMES = {v: k for k, v in WAVELET_IDS.items()}

_ENCODERS = {bitstream.CODEC_SPIHT: spiht_encode, bitstream.CODEC_STW: stw_encode}
_DECODERS = {bitstream.CODEC_SPIHT: spiht_decode, bitstream.CODEC_STW: stw_decode}


@dataclass(frozen=True)
class DecodedImage:
    pixmap: Pixmap
    truncated: bool
    header: ContainerHeader


def _to_u8(x: np.ndarray) -> np.ndarray:
    return np.clip(np.floor(x + 0.5), 0, 255).astype(np.uint8)


def compress_pixmap(
    p: Pixmap,
    codec: str = "spiht",
    levels: int = 4,
    loops: int = 10,
    wavelet: str = "cdf97",
    color_transform: bool = True,
) -> bytes:
    """Compress a GRAY or RGB pixmap into WZC1 container bytes."""
    if codec not in CODEC_IDS:
        raise ValueError(f"unknown codec {codec!r}")
    if wavelet not in WAVELET_IDS:
        raise ValueError(f"unknown wavelet {wavelet!r}")
    if p.colorspace is Colorspace.YCBCR:
        raise ValueError("compress expects GRAY or RGB input")
    if p.width % (1 << levels) or p.height % (1 << levels):
        raise ValueError(
            f"2^{levels} must divide image dimensions, got {p.width}x{p.height}"
        )
    wavelet_kind = WaveletKind(WAVELET_IDS[wavelet])
    encode = _ENCODERS[CODEC_IDS[codec]]

    apply_ct = color_transform and p.channels == 3
    work = rgb_to_ycbcr(p) if apply_ct else p

    meta = []
    payloads = []
    for i in range(work.channels):
        mat = work.channel(i).astype(np.float64)
        pyr = forward_dwt_2d(mat, levels, wavelet_kind)
        n0, bits = encode(pyr, loops)
        meta.append((n0, len(bits)))
        payloads.append(bits)

    header = ContainerHeader(
        codec_id=CODEC_IDS[codec],
        wavelet_id=WAVELET_IDS[wavelet],
        color_transform=apply_ct,
        channels=work.channels,
        levels=levels,
        loops=loops,
        width=p.width,
        height=p.height,
        channel_meta=tuple(meta),
    )
    return serialize_container(header, payloads)


def decompress_container(data: bytes) -> DecodedImage:
    """Decode container bytes; truncated payloads yield a best-effort image."""
    header, payloads = parse_container(data, allow_truncated=True)
    decode = _DECODERS[header.codec_id]
    wavelet_kind = WaveletKind(header.wavelet_id)
    layout = SubbandLayout(header.width, header.height, header.levels)

    truncated = False
    planes = []
    for (n0, nbits), bits in zip(header.channel_meta, payloads):
        if len(bits) < nbits:
            truncated = True
        pyr, chan_trunc = decode(bits, n0, header.loops, layout, wavelet_kind)
        truncated = truncated or chan_trunc
        planes.append(_to_u8(inverse_dwt_2d(pyr)))

    if header.channels == 1:
        pix = gray(planes[0])
    else:
        cs = Colorspace.YCBCR if header.color_transform else Colorspace.RGB
        pix = from_planes(planes, cs)
        if header.color_transform:
            pix = ycbcr_to_rgb(pix)
    return DecodedImage(pixmap=pix, truncated=truncated, header=header)
