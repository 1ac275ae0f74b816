import numpy as np
import pytest

from wzc.dwt import CoefficientPyramid, WaveletKind
from wzc.zerotree import (
    BitplaneSchedule,
    SignificanceIndex,
    SubbandLayout,
    children_table,
    descendants_significant,
    initial_bitplane,
    is_significant,
    offspring,
    parent,
    roots,
)

from .oracles import brute_descendant_max, brute_descendants_significant


def test_subband_rects_tile_exactly():
    for w, h, levels in [(8, 8, 2), (16, 8, 3), (4, 4, 2), (32, 32, 5)]:
        layout = SubbandLayout(w, h, levels)
        seen = np.zeros((h, w), dtype=int)
        rects = [layout.subband_rect("LL", levels)]
        for level in range(1, levels + 1):
            for band in ("HL", "LH", "HH"):
                rects.append(layout.subband_rect(band, level))
        for r in rects:
            seen[r.top : r.top + r.height, r.left : r.left + r.width] += 1
        assert np.all(seen == 1)


def test_ll_rect_only_at_top_level():
    layout = SubbandLayout(8, 8, 2)
    with pytest.raises(ValueError):
        layout.subband_rect("LL", 1)


def test_offspring_examples():
    layout = SubbandLayout(8, 8, 2)
    assert offspring((0, 0), layout) == ()  # even/even rule
    assert offspring((0, 1), layout) == ((0, 2), (0, 3), (1, 2), (1, 3))
    assert offspring((2, 3), layout) == ((4, 6), (4, 7), (5, 6), (5, 7))
    assert offspring((5, 6), layout) == ()  # finest level leaf


def test_offspring_bounds_check():
    layout = SubbandLayout(8, 8, 2)
    with pytest.raises(ValueError):
        offspring((8, 0), layout)


@pytest.mark.parametrize("w,h,levels", [(2, 2, 1), (4, 4, 1), (4, 4, 2), (8, 8, 1), (8, 8, 2), (8, 8, 3), (16, 16, 4), (16, 8, 3)])
def test_tree_partition(w, h, levels):
    # every node reached exactly once from the roots; offspring sets disjoint
    layout = SubbandLayout(w, h, levels)
    seen = np.zeros((h, w), dtype=int)
    stack = list(roots(layout))
    for node in stack:
        seen[node] += 1
    while stack:
        node = stack.pop()
        for child in offspring(node, layout):
            seen[child] += 1
            stack.append(child)
    assert np.all(seen == 1)


@pytest.mark.parametrize("w,h,levels", [(8, 8, 2), (8, 8, 3), (16, 16, 2), (4, 4, 2)])
def test_parent_inverts_offspring(w, h, levels):
    layout = SubbandLayout(w, h, levels)
    for r in range(h):
        for c in range(w):
            for child in offspring((r, c), layout):
                assert parent(child, layout) == (r, c)
    for node in roots(layout):
        assert parent(node, layout) is None or layout.in_ll(node) is False


def test_degenerate_single_ll_roots():
    # deepest decomposition: 1x1 approximation block, three orphan roots
    layout = SubbandLayout(8, 8, 3)
    assert roots(layout) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert offspring((0, 0), layout) == ()
    assert offspring((0, 1), layout) == ((0, 2), (0, 3), (1, 2), (1, 3))


def test_initial_bitplane():
    z = np.zeros((4, 4))
    assert initial_bitplane(z) is None
    z[1, 2] = 100
    assert initial_bitplane(z) == 6
    z[1, 2] = 64
    assert initial_bitplane(z) == 6
    z[1, 2] = -0.4  # rounds below 1 in the coder pre-step
    assert initial_bitplane(np.round(z)) is None


def test_is_significant():
    assert is_significant(-33, 5)
    assert not is_significant(31.9, 5)
    assert is_significant(32, 5)
    with pytest.raises(ValueError):
        is_significant(1, -1)


def test_is_significant_monotone():
    rng = np.random.default_rng(2)
    for _ in range(200):
        c = float(rng.integers(-4000, 4000))
        n = int(rng.integers(0, 12))
        if is_significant(c, n):
            for m in range(n):
                assert is_significant(c, m)


def test_schedule_planes():
    assert list(BitplaneSchedule(5, 3).planes()) == [5, 4, 3]
    assert list(BitplaneSchedule(2, 10).planes()) == [2, 1, 0]
    with pytest.raises(ValueError):
        BitplaneSchedule(-1, 3)
    with pytest.raises(ValueError):
        BitplaneSchedule(3, 0)


def test_descendants_significant_matches_brute_force_spot():
    coeffs = np.zeros((8, 8))
    coeffs[4, 4] = 40  # descendant of (1, 1) via (2, 2)
    layout = SubbandLayout(8, 8, 2)
    p = CoefficientPyramid(8, 8, 2, WaveletKind.HAAR, coeffs)
    assert descendants_significant(p, (1, 1), 5)
    assert not descendants_significant(p, (1, 1), 6)
    assert not descendants_significant(p, (4, 4), 0)  # leaf
    assert brute_descendants_significant(coeffs, layout, (1, 1), 5)
    assert not brute_descendants_significant(coeffs, layout, (1, 1), 6)


def test_all_zero_pyramid_never_significant():
    layout = SubbandLayout(4, 4, 2)
    idx = SignificanceIndex(np.zeros((4, 4)), layout)
    for r in range(4):
        for c in range(4):
            for n in range(8):
                assert not idx.descendants_significant((r, c), n)


@pytest.mark.parametrize("size,levels", [(4, 1), (8, 2), (8, 3), (16, 2), (32, 3), (32, 5)])
def test_significance_index_equals_brute_force(size, levels):
    rng = np.random.default_rng(size * 10 + levels)
    for _ in range(5):
        mags = (rng.integers(-300, 300, size=(size, size)) * (rng.random((size, size)) < 0.3)).astype(np.int64)
        layout = SubbandLayout(size, size, levels)
        idx = SignificanceIndex(mags, layout)
        for r in range(size):
            for c in range(size):
                assert idx.desc_max[r, c] == brute_descendant_max(mags, layout, (r, c))


def test_grand_descendants():
    mags = np.zeros((8, 8), dtype=np.int64)
    mags[4, 4] = 9  # grandchild of (1, 1)
    layout = SubbandLayout(8, 8, 2)
    idx = SignificanceIndex(mags, layout)
    assert idx.grand_descendants_significant((1, 1), 3)
    assert not idx.grand_descendants_significant((1, 1), 4)
    assert not idx.grand_descendants_significant((2, 2), 0)  # children are leaves


def test_children_table_matches_offspring():
    layout = SubbandLayout(8, 8, 2)
    table = children_table(layout)
    for r in range(8):
        for c in range(8):
            expected = tuple(rr * 8 + cc for rr, cc in offspring((r, c), layout))
            assert table[r * 8 + c] == expected
