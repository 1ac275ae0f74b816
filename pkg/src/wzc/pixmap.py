"""Portable pixmap (PGM/PPM) reading and writing plus the RGB<->YCbCr transform.

Supported formats: P2/P5 (grayscale) and P3/P6 (RGB), maxval 255 only.
Comments (``#`` to end of line) are allowed wherever header whitespace is.
Parsing is strict: every malformed input raises :class:`PixmapError` with the
byte offset of the problem; nothing is silently repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class Colorspace(Enum):
    GRAY = "gray"
    RGB = "rgb"
    YCBCR = "ycbcr"


class PixmapError(ValueError):
    """Malformed pixmap data. ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Pixmap:
    """An 8-bit image: ``samples`` has shape (height, width, channels), dtype uint8."""

    width: int
    height: int
    channels: int
    colorspace: Colorspace
    samples: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("pixmap dimensions must be >= 1")
        if self.channels not in (1, 3):
            raise ValueError("channels must be 1 or 3")
        if (self.channels == 1) != (self.colorspace is Colorspace.GRAY):
            raise ValueError("channels == 1 iff colorspace GRAY")
        if self.samples.shape != (self.height, self.width, self.channels):
            raise ValueError("sample array shape mismatch")
        if self.samples.dtype != np.uint8:
            raise ValueError("samples must be uint8")
        self.samples.setflags(write=False)

    def channel(self, i: int) -> np.ndarray:
        return self.samples[:, :, i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pixmap):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.channels == other.channels
            and self.colorspace == other.colorspace
            and bool(np.array_equal(self.samples, other.samples))
        )


def gray(samples: np.ndarray) -> Pixmap:
    """Wrap an (H, W) uint8 array as a GRAY pixmap."""
    a = np.ascontiguousarray(samples, dtype=np.uint8)
    h, w = a.shape
    return Pixmap(w, h, 1, Colorspace.GRAY, a.reshape(h, w, 1))


def from_planes(planes: list[np.ndarray], colorspace: Colorspace) -> Pixmap:
    a = np.stack([np.asarray(p, dtype=np.uint8) for p in planes], axis=-1)
    h, w, c = a.shape
    if c == 1:
        return gray(a[:, :, 0])
    return Pixmap(w, h, c, colorspace, np.ascontiguousarray(a))


_MAGICS = {b"P2": (1, False), b"P3": (3, False), b"P5": (1, True), b"P6": (3, True)}

_WS = b" \t\r\n\v\f"


class _Scanner:
    """Token scanner over the header (and ASCII body) of a PNM file."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip_ws_and_comments(self) -> None:
        d, n = self.data, len(self.data)
        while self.pos < n:
            c = self.data[self.pos : self.pos + 1]
            if c in (b"#",):
                nl = d.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif c in (b" ", b"\t", b"\r", b"\n", b"\v", b"\f"):
                self.pos += 1
            else:
                return

    def next_token(self, what: str) -> bytes:
        self._skip_ws_and_comments()
        if self.pos >= len(self.data):
            raise PixmapError(f"unexpected end of data while reading {what}", self.pos)
        start = self.pos
        d, n = self.data, len(self.data)
        while self.pos < n and d[self.pos : self.pos + 1] not in (
            b" ", b"\t", b"\r", b"\n", b"\v", b"\f", b"#",
        ):
            self.pos += 1
        return d[start : self.pos]

    def next_int(self, what: str, lo: int, hi: int) -> int:
        start_guess = self.pos
        tok = self.next_token(what)
        if not tok.isdigit():
            raise PixmapError(f"expected integer for {what}, got {tok!r}", start_guess)
        v = int(tok)
        if not (lo <= v <= hi):
            raise PixmapError(f"{what} {v} out of range [{lo}, {hi}]", start_guess)
        return v

    def at_end(self) -> bool:
        self._skip_ws_and_comments()
        return self.pos >= len(self.data)


def read_pixmap(data: bytes) -> Pixmap:
    """Parse PGM/PPM bytes (P2/P3/P5/P6, maxval 255) into a Pixmap."""
    if len(data) < 2:
        raise PixmapError("missing magic number", 0)
    magic = data[:2]
    if magic not in _MAGICS:
        raise PixmapError(f"unknown magic {magic!r}", 0)
    channels, binary = _MAGICS[magic]

    sc = _Scanner(data)
    sc.pos = 2
    width = sc.next_int("width", 1, 65535)
    height = sc.next_int("height", 1, 65535)
    maxval_at = sc.pos
    maxval = sc.next_int("maxval", 0, 10**9)
    if maxval != 255:
        raise PixmapError(f"unsupported maxval {maxval}, only 255", maxval_at)

    count = width * height * channels
    if binary:
        # exactly one whitespace byte separates maxval from the raster
        if sc.pos >= len(data) or data[sc.pos : sc.pos + 1] not in (
            b" ", b"\t", b"\r", b"\n", b"\v", b"\f",
        ):
            raise PixmapError("missing whitespace after maxval", sc.pos)
        start = sc.pos + 1
        raster = data[start : start + count]
        if len(raster) < count:
            raise PixmapError(
                f"truncated raster: expected {count} bytes, got {len(raster)}",
                len(data),
            )
        if len(data) > start + count:
            raise PixmapError("trailing data after raster", start + count)
        flat = np.frombuffer(raster, dtype=np.uint8)
    else:
        values = np.empty(count, dtype=np.uint8)
        for i in range(count):
            values[i] = sc.next_int("sample", 0, 255)
        if not sc.at_end():
            raise PixmapError("trailing data after samples", sc.pos)
        flat = values

    cs = Colorspace.GRAY if channels == 1 else Colorspace.RGB
    return Pixmap(width, height, channels, cs, flat.reshape(height, width, channels).copy())


def write_pixmap(p: Pixmap, binary: bool = True) -> bytes:
    """Serialize to PGM/PPM. Binary yields P5/P6, ASCII yields P2/P3.

    ``read_pixmap(write_pixmap(p)) == p`` for any valid GRAY/RGB pixmap.
    """
    if p.colorspace is Colorspace.YCBCR:
        raise ValueError("YCbCr pixmaps must be converted to RGB before writing")
    if binary:
        magic = b"P5" if p.channels == 1 else b"P6"
        header = b"%s\n%d %d\n255\n" % (magic, p.width, p.height)
        return header + p.samples.tobytes()
    magic = b"P2" if p.channels == 1 else b"P3"
    header = b"%s\n%d %d\n255\n" % (magic, p.width, p.height)
    rows = p.samples.reshape(p.height, p.width * p.channels)
    body = b"\n".join(b" ".join(b"%d" % v for v in row) for row in rows)
    return header + body + b"\n"


# Full-range BT.601 (JFIF) coefficients. Rounding is half-up, then clamp.

def _round_clamp_u8(x: np.ndarray) -> np.ndarray:
    return np.clip(np.floor(x + 0.5), 0, 255).astype(np.uint8)


def rgb_to_ycbcr(p: Pixmap) -> Pixmap:
    if p.colorspace is not Colorspace.RGB:
        raise ValueError(f"expected RGB pixmap, got {p.colorspace.value}")
    r = p.samples[:, :, 0].astype(np.float64)
    g = p.samples[:, :, 1].astype(np.float64)
    b = p.samples[:, :, 2].astype(np.float64)
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    out = np.stack([_round_clamp_u8(y), _round_clamp_u8(cb), _round_clamp_u8(cr)], axis=-1)
    return Pixmap(p.width, p.height, 3, Colorspace.YCBCR, out)


def ycbcr_to_rgb(p: Pixmap) -> Pixmap:
    if p.colorspace is not Colorspace.YCBCR:
        raise ValueError(f"expected YCbCr pixmap, got {p.colorspace.value}")
    y = p.samples[:, :, 0].astype(np.float64)
    cb = p.samples[:, :, 1].astype(np.float64) - 128.0
    cr = p.samples[:, :, 2].astype(np.float64) - 128.0
    r = y + 1.402 * cr
    g = y - (0.114 * 1.772 / 0.587) * cb - (0.299 * 1.402 / 0.587) * cr
    b = y + 1.772 * cb
    out = np.stack([_round_clamp_u8(r), _round_clamp_u8(g), _round_clamp_u8(b)], axis=-1)
    return Pixmap(p.width, p.height, 3, Colorspace.RGB, out)
