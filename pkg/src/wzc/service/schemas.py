"""Pydantic request/response models for the compression service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

CodecName = Literal["spiht", "stw"]
WaveletName = Literal["cdf97", "haar"]


class CompressRequest(BaseModel):
    image_b64: str = Field(description="PGM/PPM file content, base64")
    codec: CodecName = "spiht"
    levels: int = Field(4, ge=1, le=15)
    loops: int = Field(10, ge=1, le=255)
    wavelet: WaveletName = "cdf97"
    color_transform: bool = True


class CompressResponse(BaseModel):
    container_b64: str
    compressed_bytes: int
    bpp: float
    width: int
    height: int
    channels: int


class DecompressRequest(BaseModel):
    container_b64: str
    ascii_format: bool = False


class DecompressResponse(BaseModel):
    image_b64: str
    truncated: bool
    width: int
    height: int
    channels: int
    colorspace: str


class MetricsRequest(BaseModel):
    image_a_b64: str
    image_b_b64: str


class MetricsResponse(BaseModel):
    mse: float
    psnr: Optional[float] = None  # None encodes an infinite PSNR (mse == 0)


class InfoRequest(BaseModel):
    container_b64: str


class ChannelInfo(BaseModel):
    n0: Optional[int] = None
    payload_bits: int


class InfoResponse(BaseModel):
    codec: CodecName
    wavelet: WaveletName
    width: int
    height: int
    channels: int
    levels: int
    loops: int
    color_transform: bool
    header_bytes: int
    total_bytes: int
    channel_meta: list[ChannelInfo]


class BenchRequest(BaseModel):
    image_b64: str
    codecs: list[CodecName] = ["spiht", "stw"]
    levels: list[int] = Field(default=[1, 2, 3, 4, 5, 6, 7, 8], min_length=1)
    loops: int = Field(10, ge=1, le=255)
    wavelet: WaveletName = "cdf97"
    color_transform: bool = True
    format: Literal["markdown", "csv"] = "markdown"


class BenchRow(BaseModel):
    codec: CodecName
    level: int
    mse: Optional[float] = None
    psnr: Optional[float] = None
    cr_percent: Optional[float] = None
    bpp: Optional[float] = None
    compressed_bytes: Optional[int] = None
    wall_time: float
    error: Optional[str] = None


class BenchResponse(BaseModel):
    rows: list[BenchRow]
    report: str


class VerifyCheck(BaseModel):
    name: str
    passed: bool
    computed: float
    expected: float
    tolerance: float


class VerifyPaperResponse(BaseModel):
    checks: list[VerifyCheck]
    swap_flagged: bool
    all_passed: bool
    report: str
