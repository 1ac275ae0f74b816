"""Spatial-orientation quadtrees, significance tests and the bit-plane schedule.

Tree geometry over the in-place subband layout:

* outside the top-left approximation block, node (r, c) has the four offspring
  (2r, 2c), (2r, 2c+1), (2r+1, 2c), (2r+1, 2c+1) when they fall inside the
  matrix, and none otherwise (finest-level nodes are leaves);
* inside the approximation block the nodes are grouped 2x2; the even/even
  member of each group has no offspring, and the other three members own the
  corresponding 2x2 block of the coarsest detail subband in their quadrant
  direction.

When the approximation block degenerates to a single coefficient
(levels == log2(size)) there is no 2x2 grouping, so the coarsest detail
coefficients have no parent; they are treated as additional tree roots. This
keeps the forest a partition of the whole matrix for every legal level count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dwt import CoefficientPyramid

# Subband names by quadrant position: HL top-right, LH bottom-left, HH bottom-right.
LL, HL, LH, HH = "LL", "HL", "LH", "HH"


@dataclass(frozen=True)
class Rect:
    top: int
    left: int
    height: int
    width: int


@dataclass(frozen=True)
class SubbandLayout:
    width: int
    height: int
    levels: int

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if self.width % (1 << self.levels) or self.height % (1 << self.levels):
            raise ValueError("2^levels must divide both dimensions")

    def subband_rect(self, band: str, level: int) -> Rect:
        if not 1 <= level <= self.levels:
            raise ValueError(f"level {level} out of range 1..{self.levels}")
        h = self.height >> level
        w = self.width >> level
        if band == LL:
            if level != self.levels:
                raise ValueError("LL exists only at the deepest level")
            return Rect(0, 0, h, w)
        if band == HL:
            return Rect(0, w, h, w)
        if band == LH:
            return Rect(h, 0, h, w)
        if band == HH:
            return Rect(h, w, h, w)
        raise ValueError(f"unknown band {band!r}")

    @property
    def ll_height(self) -> int:
        return self.height >> self.levels

    @property
    def ll_width(self) -> int:
        return self.width >> self.levels

    def in_ll(self, node: tuple[int, int]) -> bool:
        r, c = node
        return r < self.ll_height and c < self.ll_width

    def check_bounds(self, node: tuple[int, int]) -> None:
        r, c = node
        if not (0 <= r < self.height and 0 <= c < self.width):
            raise ValueError(f"node {node} outside {self.width}x{self.height}")


def offspring(node: tuple[int, int], layout: SubbandLayout) -> tuple[tuple[int, int], ...]:
    """Direct children of a node, empty for leaves."""
    layout.check_bounds(node)
    r, c = node
    mh, mw = layout.ll_height, layout.ll_width
    if r < mh and c < mw:
        if r % 2 == 0 and c % 2 == 0:
            return ()
        a, b = r // 2, c // 2
        if 2 * a + 1 >= mh or 2 * b + 1 >= mw:
            return ()  # incomplete 2x2 group: no place for a child block
        dr = mh if r % 2 else 0
        dc = mw if c % 2 else 0
        rr, cc = dr + 2 * a, dc + 2 * b
        return ((rr, cc), (rr, cc + 1), (rr + 1, cc), (rr + 1, cc + 1))
    if r < layout.height // 2 and c < layout.width // 2:
        rr, cc = 2 * r, 2 * c
        return ((rr, cc), (rr, cc + 1), (rr + 1, cc), (rr + 1, cc + 1))
    return ()


def parent(node: tuple[int, int], layout: SubbandLayout) -> tuple[int, int] | None:
    """Inverse of :func:`offspring`; None for roots."""
    layout.check_bounds(node)
    r, c = node
    mh, mw = layout.ll_height, layout.ll_width
    if r < mh and c < mw:
        return None
    if r < 2 * mh and c < 2 * mw:
        # coarsest detail scale: parent would be a group member in the
        # approximation block, if the enclosing 2x2 group exists
        lr = r - mh if r >= mh else r
        lc = c - mw if c >= mw else c
        a, b = lr // 2, lc // 2
        if 2 * a + 1 >= mh or 2 * b + 1 >= mw:
            return None
        pr = 2 * a + (1 if r >= mh else 0)
        pc = 2 * b + (1 if c >= mw else 0)
        return (pr, pc)
    return (r // 2, c // 2)


def roots(layout: SubbandLayout) -> list[tuple[int, int]]:
    """All parentless nodes in raster order (the approximation block, plus
    orphaned coarsest detail nodes when no 2x2 grouping exists)."""
    out = []
    for r in range(2 * layout.ll_height):
        for c in range(2 * layout.ll_width):
            if layout.in_ll((r, c)) or parent((r, c), layout) is None:
                out.append((r, c))
    return out


@lru_cache(maxsize=32)
def children_table(layout: SubbandLayout) -> tuple[tuple[int, ...], ...]:
    """Flat-index offspring per node, cached per layout for the coder hot paths."""
    w = layout.width
    table = []
    for r in range(layout.height):
        for c in range(w):
            table.append(tuple(rr * w + cc for rr, cc in offspring((r, c), layout)))
    return tuple(table)


EMPTY = None  # sentinel n0 for an all-insignificant pyramid


def initial_bitplane(p: CoefficientPyramid | np.ndarray) -> int | None:
    """floor(log2(max |c|)) over integer-rounded magnitudes, or EMPTY."""
    coeffs = p.coeffs if isinstance(p, CoefficientPyramid) else np.asarray(p)
    m = int(np.max(np.abs(coeffs))) if coeffs.size else 0
    if m < 1:
        return EMPTY
    return m.bit_length() - 1


def is_significant(c: float, n: int) -> bool:
    if n < 0:
        raise ValueError("bit-plane index must be >= 0")
    return abs(c) >= (1 << n)


@dataclass(frozen=True)
class BitplaneSchedule:
    """Thresholds 2^n for n = n0, n0-1, ..., max(n0-loops+1, 0)."""

    n0: int
    loops: int

    def __post_init__(self):
        if self.n0 < 0:
            raise ValueError("n0 must be >= 0")
        if self.loops < 1:
            raise ValueError("loops must be >= 1")

    def planes(self) -> range:
        return range(self.n0, max(self.n0 - self.loops + 1, 0) - 1, -1)


class SignificanceIndex:
    """Per-subtree maximum magnitudes for O(1) descendant significance tests.

    Built once per encode from the integer-rounded coefficient matrix. Answers
    must agree with a brute-force recursive scan of the tree; the test suite
    pins that equivalence.
    """

    def __init__(self, magnitudes: np.ndarray, layout: SubbandLayout):
        self.layout = layout
        absm = np.abs(np.asarray(magnitudes, dtype=np.int64))
        if absm.shape != (layout.height, layout.width):
            raise ValueError("magnitude matrix does not match layout")
        desc = np.zeros_like(absm)
        combined = absm.copy()  # max(|c|, desc_max), filled fine -> coarse

        def region(rect: Rect, arr: np.ndarray) -> np.ndarray:
            return arr[rect.top : rect.top + rect.height, rect.left : rect.left + rect.width]

        for level in range(1, layout.levels):
            for band in (HL, LH, HH):
                rect = layout.subband_rect(band, level)
                sub = region(rect, combined)
                pooled = sub.reshape(rect.height // 2, 2, rect.width // 2, 2).max(axis=(1, 3))
                prect = layout.subband_rect(band, level + 1)
                region(prect, desc)[:, :] = pooled
                np.maximum(pooled, region(prect, absm), out=region(prect, combined))

        mh, mw = layout.ll_height, layout.ll_width
        gh, gw = mh // 2, mw // 2
        if gh and gw:
            for band, pr, pc in ((HL, 0, 1), (LH, 1, 0), (HH, 1, 1)):
                rect = layout.subband_rect(band, layout.levels)
                sub = region(rect, combined)[: 2 * gh, : 2 * gw]
                pooled = sub.reshape(gh, 2, gw, 2).max(axis=(1, 3))
                desc[pr : 2 * gh : 2, pc : 2 * gw : 2] = pooled

        self.desc_max = desc
        self.desc_flat = desc.ravel().tolist()
        self._w = layout.width

    def descendants_significant(self, node: tuple[int, int], n: int) -> bool:
        r, c = node
        return self.desc_flat[r * self._w + c] >= (1 << n)

    def grand_descendants_significant(self, node: tuple[int, int], n: int) -> bool:
        t = 1 << n
        for o in offspring(node, self.layout):
            if self.desc_flat[o[0] * self._w + o[1]] >= t:
                return True
        return False


def descendants_significant(p: CoefficientPyramid, node: tuple[int, int], n: int) -> bool:
    """True iff any strict descendant magnitude reaches 2^n.

    Convenience form that builds the index on the fly; the coders keep a
    :class:`SignificanceIndex` instead of calling this per node.
    """
    layout = SubbandLayout(p.width, p.height, p.levels)
    idx = SignificanceIndex(np.asarray(p.coeffs), layout)
    return idx.descendants_significant(node, n)
