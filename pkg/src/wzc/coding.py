"""Machinery shared by the two bit-plane coders.

Both coders operate on integer-rounded coefficient magnitudes (round half away
from zero) and emit raw bit sequences represented as bytearrays of 0/1 values.
Decoders track one reconstruction cell per significant coefficient.

Sign bit convention: 0 = positive, 1 = negative.
"""

from __future__ import annotations

import numpy as np

Bits = bytearray


class StreamUnderrun(Exception):
    """Raised when a decoder runs off the end of a (truncated) bit sequence."""


class BitCursor:
    __slots__ = ("bits", "pos")

    def __init__(self, bits):
        self.bits = bits
        self.pos = 0

    def read(self) -> int:
        if self.pos >= len(self.bits):
            raise StreamUnderrun()
        b = self.bits[self.pos]
        self.pos += 1
        return b


def round_half_away(x: np.ndarray) -> np.ndarray:
    """Round to integers, halves away from zero; returns int64."""
    a = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(a) + 0.5), a).astype(np.int64)


class ReconstructionCell:
    """Decoder-side magnitude interval [low, high) with a sign.

    The value is the interval centre while the magnitude is still uncertain;
    once refinement narrows the interval to width 1 the integer magnitude is
    pinned exactly and the value snaps to it.
    """

    __slots__ = ("sign", "low", "high")

    def __init__(self, sign: int, low: int, high: int):
        if not 0 <= low < high:
            raise ValueError("require 0 <= low < high")
        self.sign = sign
        self.low = low
        self.high = high

    @classmethod
    def significant_at(cls, sign_bit: int, plane: int) -> "ReconstructionCell":
        return cls(-1 if sign_bit else 1, 1 << plane, 1 << (plane + 1))

    def refine(self, bit: int) -> None:
        mid = (self.low + self.high) // 2
        if bit:
            self.low = mid
        else:
            self.high = mid

    def value(self) -> float:
        if self.high - self.low <= 1:
            return self.sign * float(self.low)
        return self.sign * (self.low + self.high) / 2.0


def materialize(cells: dict[int, ReconstructionCell], height: int, width: int) -> np.ndarray:
    """Turn decoder cells into a float coefficient matrix (zeros elsewhere)."""
    out = np.zeros((height, width), dtype=np.float64)
    flat = out.ravel()
    for idx, cell in cells.items():
        flat[idx] = cell.value()
    return out
