"""Bit-exact bit I/O and the WZC1 container format.

All bits are MSB-first; the final byte of a payload is zero-padded. All
multi-byte integers are big-endian.

Container layout::

    offset  size  field
    0       4     magic "WZC1"
    4       1     codec id        (0 = SPIHT, 1 = STW)
    5       1     wavelet id      (0 = Haar, 1 = CDF 9/7)
    6       1     flags           (bit0: color transform applied)
    7       1     channel count
    8       1     decomposition levels
    9       1     coding passes (loops)
    10      2     width  (big-endian)
    12      2     height (big-endian)
    14      5*C   per channel: n0 (1 byte, 0xFF = EMPTY sentinel),
                  payload bit length (4 bytes, big-endian)

followed by each channel's payload, ceil(bits / 8) bytes per channel.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

MAGIC = b"WZC1"
CODEC_SPIHT = 0
CODEC_STW = 1
WAVELET_HAAR = 0
WAVELET_CDF97 = 1

_FIXED_FMT = ">4sBBBBBBHH"
_FIXED_SIZE = struct.calcsize(_FIXED_FMT)  # 14
_CHANNEL_FMT = ">BI"
_CHANNEL_SIZE = struct.calcsize(_CHANNEL_FMT)  # 5
_EMPTY_N0 = 0xFF


class ContainerError(ValueError):
    pass


class BadMagicError(ContainerError):
    pass


class UnknownCodecError(ContainerError):
    pass


class UnknownWaveletError(ContainerError):
    pass


class InvalidHeaderError(ContainerError):
    pass


class LengthMismatchError(ContainerError):
    pass


class TruncatedError(ContainerError):
    pass


class BitWriter:
    """Accumulates bits MSB-first; flush zero-pads the final byte."""

    def __init__(self):
        self._bits = bytearray()

    def write_bit(self, bit: int) -> None:
        self._bits.append(1 if bit else 0)

    def write_bits(self, bits) -> None:
        self._bits.extend(1 if b else 0 for b in bits)

    @property
    def bit_length(self) -> int:
        return len(self._bits)

    def flush(self) -> bytes:
        return pack_bits(self._bits)


class BitReader:
    """Reads MSB-first bits; never reads past the declared bit length."""

    def __init__(self, data: bytes, bit_length: int | None = None):
        if bit_length is None:
            bit_length = 8 * len(data)
        if bit_length > 8 * len(data):
            raise TruncatedError(
                f"declared {bit_length} bits but only {8 * len(data)} present"
            )
        self._data = data
        self._len = bit_length
        self.pos = 0

    @property
    def remaining(self) -> int:
        return self._len - self.pos

    def read_bit(self) -> int:
        if self.pos >= self._len:
            raise TruncatedError("read past declared bit length")
        byte = self._data[self.pos >> 3]
        bit = (byte >> (7 - (self.pos & 7))) & 1
        self.pos += 1
        return bit

    def read_bits(self, count: int) -> bytearray:
        if count < 0:
            raise ValueError("count must be >= 0")
        if count > self.remaining:
            raise TruncatedError(
                f"requested {count} bits, only {self.remaining} remain"
            )
        out = bytearray(count)
        for i in range(count):
            out[i] = self.read_bit()
        return out


def pack_bits(bits) -> bytes:
    """Pack a 0/1 sequence into bytes, MSB-first, zero-padded."""
    if len(bits) == 0:
        return b""
    arr = np.frombuffer(bytes(bits), dtype=np.uint8)
    return np.packbits(arr).tobytes()


def unpack_bits(data: bytes, bit_length: int) -> bytearray:
    """Inverse of :func:`pack_bits`, trimmed to ``bit_length`` bits."""
    if bit_length == 0:
        return bytearray()
    if bit_length > 8 * len(data):
        raise TruncatedError(f"need {bit_length} bits, have {8 * len(data)}")
    arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8), count=bit_length)
    return bytearray(arr.tobytes())


@dataclass(frozen=True)
class ContainerHeader:
    codec_id: int
    wavelet_id: int
    color_transform: bool
    channels: int
    levels: int
    loops: int
    width: int
    height: int
    channel_meta: tuple[tuple[int | None, int], ...]  # (n0 or None, bit length)

    def __post_init__(self):
        if self.codec_id not in (CODEC_SPIHT, CODEC_STW):
            raise UnknownCodecError(f"unknown codec id {self.codec_id}")
        if self.wavelet_id not in (WAVELET_HAAR, WAVELET_CDF97):
            raise UnknownWaveletError(f"unknown wavelet id {self.wavelet_id}")
        if self.channels not in (1, 3):
            raise InvalidHeaderError(f"unsupported channel count {self.channels}")
        if not (1 <= self.levels <= 255 and 1 <= self.loops <= 255):
            raise InvalidHeaderError("levels and loops must be in 1..255")
        if not (1 <= self.width <= 65535 and 1 <= self.height <= 65535):
            raise InvalidHeaderError("dimensions must be in 1..65535")
        if len(self.channel_meta) != self.channels:
            raise InvalidHeaderError("channel metadata count mismatch")
        for n0, nbits in self.channel_meta:
            if n0 is not None and not (0 <= n0 < _EMPTY_N0):
                raise InvalidHeaderError(f"n0 {n0} out of range")
            if nbits < 0 or nbits > 0xFFFFFFFF:
                raise InvalidHeaderError("payload bit length out of range")

    @property
    def header_bytes(self) -> int:
        return _FIXED_SIZE + _CHANNEL_SIZE * self.channels

    @property
    def payload_bytes(self) -> int:
        return sum((nbits + 7) // 8 for _, nbits in self.channel_meta)


def serialize_container(header: ContainerHeader, payloads) -> bytes:
    """Serialize header + per-channel bit payloads to container bytes."""
    if len(payloads) != header.channels:
        raise ValueError("payload count does not match channel count")
    flags = 1 if header.color_transform else 0
    out = bytearray(
        struct.pack(
            _FIXED_FMT,
            MAGIC,
            header.codec_id,
            header.wavelet_id,
            flags,
            header.channels,
            header.levels,
            header.loops,
            header.width,
            header.height,
        )
    )
    for (n0, nbits), bits in zip(header.channel_meta, payloads):
        if len(bits) != nbits:
            raise ValueError("payload bit length does not match header metadata")
        out += struct.pack(_CHANNEL_FMT, _EMPTY_N0 if n0 is None else n0, nbits)
    for bits in payloads:
        out += pack_bits(bits)
    return bytes(out)


def parse_container(
    data: bytes, allow_truncated: bool = False
) -> tuple[ContainerHeader, list[bytearray]]:
    """Parse container bytes into (header, per-channel bit payloads).

    With ``allow_truncated`` the payloads of a short file are returned as far
    as they go (the header must still be complete); callers detect truncation
    by comparing payload lengths against ``header.channel_meta``.
    """
    if len(data) < 4:
        raise TruncatedError("file shorter than magic")
    if data[:4] != MAGIC:
        raise BadMagicError(f"bad magic {data[:4]!r}")
    if len(data) < _FIXED_SIZE:
        raise TruncatedError("truncated fixed header")
    (_, codec_id, wavelet_id, flags, channels, levels, loops, width, height) = struct.unpack_from(
        _FIXED_FMT, data, 0
    )
    meta_end = _FIXED_SIZE + _CHANNEL_SIZE * channels
    if len(data) < meta_end:
        raise TruncatedError("truncated channel metadata")
    meta = []
    for i in range(channels):
        n0, nbits = struct.unpack_from(_CHANNEL_FMT, data, _FIXED_SIZE + _CHANNEL_SIZE * i)
        meta.append((None if n0 == _EMPTY_N0 else n0, nbits))
    header = ContainerHeader(
        codec_id=codec_id,
        wavelet_id=wavelet_id,
        color_transform=bool(flags & 1),
        channels=channels,
        levels=levels,
        loops=loops,
        width=width,
        height=height,
        channel_meta=tuple(meta),
    )
    expected = meta_end + header.payload_bytes
    if len(data) > expected:
        raise LengthMismatchError(
            f"{len(data) - expected} trailing bytes after declared payloads"
        )
    if len(data) < expected and not allow_truncated:
        raise TruncatedError(
            f"file is {len(data)} bytes, declared payloads need {expected}"
        )
    payloads = []
    pos = meta_end
    for _, nbits in meta:
        nbytes = (nbits + 7) // 8
        chunk = data[pos : pos + nbytes]
        pos += nbytes
        avail_bits = min(nbits, 8 * len(chunk))
        payloads.append(unpack_bits(chunk, avail_bits) if chunk else bytearray())
    return header, payloads
