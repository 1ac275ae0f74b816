"""STW: zerotree coding via per-node state transitions.

Every node carries one of four states:

* IR - value and descendants insignificant (the initial state),
* IV - value insignificant, some descendant significant,
* SR - value significant, descendants insignificant,
* SV - both significant.

Transitions move only up the lattice IR -> {IV, SR, SV}, IV -> SV, SR -> SV.
Per pass the scan visits the approximation block in raster order and then
each level's subbands coarse to fine (top-right, bottom-left, bottom-right;
raster within a subband), skipping every node below an ancestor whose state
still claims insignificant descendants (IR or SR). A visited node emits only
the bits its state leaves undetermined: value bit (and sign on the 0->1
transition) from IR/IV, descendant bit from IR/SR on non-leaves, nothing from
SV. Refinement bits follow for nodes significant since an earlier pass.

The skip rule is implemented by materializing, per subband, the list of nodes
whose parent has entered an "open" state (IV/SV); children join the list the
moment their parent opens, which by scan order happens before their subband
is visited in the same pass.
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

IR, IV, SR, SV = 0, 1, 2, 3


def _scan_groups(layout: SubbandLayout):
    """Static scan structure: approximation-block nodes, the (level, band)
    visit order, initial per-group visit lists (orphan roots pre-seeded), and
    the child-group band for each approximation-block member."""
    w = layout.width
    mh, mw = layout.ll_height, layout.ll_width
    ll_nodes = [r * w + c for r in range(mh) for c in range(mw)]
    order = [(lvl, b) for lvl in range(layout.levels, 0, -1) for b in range(3)]
    groups: dict[tuple[int, int], list[int]] = {k: [] for k in order}
    for r, c in roots(layout):
        if r < mh and c < mw:
            continue
        band = 0 if r < mh else (1 if c < mw else 2)
        groups[(layout.levels, band)].append(r * w + c)
    ll_band = {}
    for r in range(mh):
        for c in range(mw):
            if r % 2 or c % 2:
                ll_band[r * w + c] = 0 if r % 2 == 0 else (1 if c % 2 == 0 else 2)
    return ll_nodes, order, groups, ll_band


def stw_encode(p: CoefficientPyramid, loops: int) -> tuple[int | None, Bits]:
    """Encode an integer-rounded pyramid; returns (n0, bit sequence)."""
    layout = SubbandLayout(p.width, p.height, p.levels)
    mags = round_half_away(p.coeffs)
    n0 = initial_bitplane(mags)
    out = Bits()
    if n0 is None:
        return None, out

    absm = np.abs(mags).ravel().tolist()
    neg = (mags < 0).astype(np.uint8).ravel().tolist()
    desc = SignificanceIndex(mags, layout).desc_flat
    children = children_table(layout)

    ll_nodes, order, groups, ll_band = _scan_groups(layout)
    states = bytearray(layout.height * layout.width)
    refine: list[int] = []
    dirty: set[tuple[int, int]] = set()

    def visit(idx: int, key_level: int, key_band: int, t: int) -> None:
        s = states[idx]
        if s == SV:
            return
        ch = children[idx]
        if s == IR:
            v = 1 if absm[idx] >= t else 0
            out.append(v)
            if v:
                out.append(neg[idx])
                refine.append(idx)
            dv = 0
            if ch:
                dv = 1 if desc[idx] >= t else 0
                out.append(dv)
            states[idx] = (SV if v else IV) if dv else (SR if v else IR)
        elif s == IV:
            v = 1 if absm[idx] >= t else 0
            out.append(v)
            if v:
                out.append(neg[idx])
                refine.append(idx)
                states[idx] = SV
            return
        else:  # SR
            dv = 0
            if ch:
                dv = 1 if desc[idx] >= t else 0
                out.append(dv)
                if dv:
                    states[idx] = SV
        if dv:
            # key_level 0 marks approximation-block nodes, whose children live
            # in the coarsest detail subband of the member's orientation
            key = (key_level, key_band) if key_level else (layout.levels, ll_band[idx])
            groups[key].extend(ch)
            dirty.add(key)

    for n in BitplaneSchedule(n0, loops).planes():
        t = 1 << n
        cut = len(refine)
        for idx in ll_nodes:
            visit(idx, 0, 0, t)
        for lvl, band in order:
            key = (lvl, band)
            lst = groups[key]
            if key in dirty:
                lst.sort()
                dirty.discard(key)
            child_key_level = lvl - 1
            for idx in lst:
                visit(idx, child_key_level, band, t)
        for idx in refine[:cut]:
            out.append((absm[idx] >> n) & 1)

    return n0, out


def stw_decode(
    bits,
    n0: int | None,
    loops: int,
    layout: SubbandLayout,
    wavelet: WaveletKind = WaveletKind.CDF97,
) -> tuple[CoefficientPyramid, bool]:
    """Mirror of :func:`stw_encode`. Returns (pyramid, truncated flag)."""
    if n0 is None:
        coeffs = np.zeros((layout.height, layout.width), dtype=np.float64)
        return CoefficientPyramid(layout.width, layout.height, layout.levels, wavelet, coeffs), False

    children = children_table(layout)
    ll_nodes, order, groups, ll_band = _scan_groups(layout)
    states = bytearray(layout.height * layout.width)
    cells: dict[int, ReconstructionCell] = {}
    refine: list[int] = []
    dirty: set[tuple[int, int]] = set()
    cur = BitCursor(bits)

    def visit(idx: int, key_level: int, key_band: int, n: int) -> None:
        s = states[idx]
        if s == SV:
            return
        ch = children[idx]
        if s == IR:
            v = cur.read()
            if v:
                cells[idx] = ReconstructionCell.significant_at(cur.read(), n)
                refine.append(idx)
            dv = cur.read() if ch else 0
            states[idx] = (SV if v else IV) if dv else (SR if v else IR)
        elif s == IV:
            v = cur.read()
            if v:
                cells[idx] = ReconstructionCell.significant_at(cur.read(), n)
                refine.append(idx)
                states[idx] = SV
            return
        else:  # SR
            dv = 0
            if ch:
                dv = cur.read()
                if dv:
                    states[idx] = SV
        if dv:
            # key_level 0 marks approximation-block nodes, whose children live
            # in the coarsest detail subband of the member's orientation
            key = (key_level, key_band) if key_level else (layout.levels, ll_band[idx])
            groups[key].extend(ch)
            dirty.add(key)

    truncated = False
    try:
        for n in BitplaneSchedule(n0, loops).planes():
            cut = len(refine)
            for idx in ll_nodes:
                visit(idx, 0, 0, n)
            for lvl, band in order:
                key = (lvl, band)
                lst = groups[key]
                if key in dirty:
                    lst.sort()
                    dirty.discard(key)
                child_key_level = lvl - 1
                for idx in lst:
                    visit(idx, child_key_level, band, n)
            for idx in refine[:cut]:
                cells[idx].refine(cur.read())
    except StreamUnderrun:
        truncated = True

    coeffs = materialize(cells, layout.height, layout.width)
    return CoefficientPyramid(layout.width, layout.height, layout.levels, wavelet, coeffs), truncated
