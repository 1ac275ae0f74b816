"""SPIHT bit-plane encoder and its mirrored decoder.

The coder maintains three ordered lists over the coefficient tree:

* LIP - individually insignificant coefficients,
* LIS - insignificant sets, kind A (all strict descendants) or kind B
  (descendants excluding direct offspring),
* LSP - significant coefficients, refined one magnitude bit per later pass.

Each pass at plane n runs the sorting pass (LIP significance + signs, then
LIS set tests with kind-A offspring emission / kind-B promotion) followed by
the refinement pass over LSP entries older than the pass. No pass markers are
written; the decoder reproduces the control flow exactly, reading one bit
wherever the encoder wrote one.
"""

from __future__ import annotations

import numpy as np

from .coding import Bits, BitCursor, ReconstructionCell, StreamUnderrun, materialize, round_half_away
from .dwt import CoefficientPyramid, WaveletKind
from .zerotree import (
    BitplaneSchedule,
    SignificanceIndex,
    SubbandLayout,
    children_table,
    initial_bitplane,
    roots,
)

# opt-in pass-boundary list checks (LIP/LSP disjoint, no duplicates); costs
# O(list sizes) per pass, so off unless a test or debugging session flips it
DEBUG_LIST_CHECKS = False


def _check_lists(lip, lis, lsp):
    lip_set, lsp_set = set(lip), set(lsp)
    assert len(lip_set) == len(lip), "duplicate LIP entry"
    assert len(lsp_set) == len(lsp), "duplicate LSP entry"
    assert not (lip_set & lsp_set), "node in both LIP and LSP"
    assert len(set(lis)) == len(lis), "duplicate LIS entry"


def spiht_encode(p: CoefficientPyramid, loops: int) -> tuple[int | None, Bits]:
    """Encode an integer-rounded pyramid; returns (n0, bit sequence)."""
    layout = SubbandLayout(p.width, p.height, p.levels)
    mags = round_half_away(p.coeffs)
    n0 = initial_bitplane(mags)
    out = Bits()
    if n0 is None:
        return None, out

    w = layout.width
    absm = np.abs(mags).ravel().tolist()
    neg = (mags < 0).astype(np.uint8).ravel().tolist()
    desc = SignificanceIndex(mags, layout).desc_flat
    children = children_table(layout)

    root_idx = [r * w + c for r, c in roots(layout)]
    lip = list(root_idx)
    lis: list[tuple[int, bool]] = [(i, False) for i in root_idx if children[i]]
    lsp: list[int] = []

    for n in BitplaneSchedule(n0, loops).planes():
        t = 1 << n
        cut = len(lsp)

        next_lip = []
        for idx in lip:
            if absm[idx] >= t:
                out.append(1)
                out.append(neg[idx])
                lsp.append(idx)
            else:
                out.append(0)
                next_lip.append(idx)
        lip = next_lip

        keep = []
        i = 0
        while i < len(lis):
            idx, is_b = lis[i]
            i += 1
            if not is_b:
                if desc[idx] >= t:
                    out.append(1)
                    ch = children[idx]
                    for k in ch:
                        if absm[k] >= t:
                            out.append(1)
                            out.append(neg[k])
                            lsp.append(k)
                        else:
                            out.append(0)
                            lip.append(k)
                    if children[ch[0]]:
                        lis.append((idx, True))
                else:
                    out.append(0)
                    keep.append((idx, False))
            else:
                sig = 0
                for k in children[idx]:
                    if desc[k] >= t:
                        sig = 1
                        break
                out.append(sig)
                if sig:
                    for k in children[idx]:
                        lis.append((k, False))
                else:
                    keep.append((idx, True))
        lis = keep

        for idx in lsp[:cut]:
            out.append((absm[idx] >> n) & 1)

        if __debug__ and DEBUG_LIST_CHECKS:
            _check_lists(lip, lis, lsp)

    return n0, out


def spiht_decode(
    bits,
    n0: int | None,
    loops: int,
    layout: SubbandLayout,
    wavelet: WaveletKind = WaveletKind.CDF97,
) -> tuple[CoefficientPyramid, bool]:
    """Mirror of :func:`spiht_encode`. Returns (pyramid, truncated flag)."""
    w = layout.width
    if n0 is None:
        coeffs = np.zeros((layout.height, layout.width), dtype=np.float64)
        return CoefficientPyramid(layout.width, layout.height, layout.levels, wavelet, coeffs), False

    children = children_table(layout)
    cur = BitCursor(bits)
    cells: dict[int, ReconstructionCell] = {}

    root_idx = [r * w + c for r, c in roots(layout)]
    lip = list(root_idx)
    lis: list[tuple[int, bool]] = [(i, False) for i in root_idx if children[i]]
    lsp: list[int] = []

    truncated = False
    try:
        for n in BitplaneSchedule(n0, loops).planes():
            cut = len(lsp)

            next_lip = []
            for idx in lip:
                if cur.read():
                    cells[idx] = ReconstructionCell.significant_at(cur.read(), n)
                    lsp.append(idx)
                else:
                    next_lip.append(idx)
            lip = next_lip

            keep = []
            i = 0
            while i < len(lis):
                idx, is_b = lis[i]
                i += 1
                if not is_b:
                    if cur.read():
                        ch = children[idx]
                        for k in ch:
                            if cur.read():
                                cells[k] = ReconstructionCell.significant_at(cur.read(), n)
                                lsp.append(k)
                            else:
                                lip.append(k)
                        if children[ch[0]]:
                            lis.append((idx, True))
                    else:
                        keep.append((idx, False))
                else:
                    if cur.read():
                        for k in children[idx]:
                            lis.append((k, False))
                    else:
                        keep.append((idx, True))
            lis = keep

            for idx in lsp[:cut]:
                cells[idx].refine(cur.read())
    except StreamUnderrun:
        truncated = True

    coeffs = materialize(cells, layout.height, layout.width)
    return CoefficientPyramid(layout.width, layout.height, layout.levels, wavelet, coeffs), truncated
