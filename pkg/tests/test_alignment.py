import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import levenshtein_dp, plain_ed, selfed_oracle
from wedmatch.alignment import (Alignment, Breakpoint, align_image, alignment_cost, levenshtein,
                                optimal_alignment, self_edit_distance, unweighted_alignment_lv,
                                weighted_edit_distance, weighted_edit_distance_capped)
from wedmatch.core_text import INF, SCALE, WeightTable, unit_table
from wedmatch.errors import RangeError, ShapeError
from wedmatch.generators import random_string, random_weight_table

strs = st.text(alphabet="abc", max_size=12)
W3 = WeightTable(("a", "b"), {("a", "b"): 3 * SCALE, ("b", "a"): 3 * SCALE})


def all_alignment_costs(x, y, w):
    """Every monotone path, enumerated recursively (tiny inputs only)."""
    out = []

    def go(i, j, acc):
        if i == len(x) and j == len(y):
            out.append(acc)
            return
        if i < len(x) and j < len(y):
            go(i + 1, j + 1, acc + w.w(x[i], y[j]))
        if i < len(x):
            go(i + 1, j, acc + w.w(x[i], ""))
        if j < len(y):
            go(i, j + 1, acc + w.w("", y[j]))

    go(0, 0, 0)
    return out


def test_examples():
    u = unit_table("ab")
    assert weighted_edit_distance("abba", "abba", u) == 0
    assert weighted_edit_distance("a", "b", u) == SCALE
    assert weighted_edit_distance("a", "b", W3) == 2 * SCALE
    assert min(all_alignment_costs("a", "b", W3)) == 2 * SCALE
    assert weighted_edit_distance("", "", u) == 0
    assert weighted_edit_distance("ab", "", u) == 2 * SCALE


def test_capped_examples():
    u = unit_table("ab")
    assert weighted_edit_distance_capped("ab", "ab", u, 0) == 0
    assert weighted_edit_distance_capped("aaaa", "bbbb", u, SCALE) == INF
    assert weighted_edit_distance_capped("aaaa", "bbbb", u, 4 * SCALE) == 4 * SCALE


def test_brute_force_small(rng):
    for _ in range(60):
        w = random_weight_table(rng, "ab")
        x = random_string(rng, int(rng.integers(0, 5)), "ab")
        y = random_string(rng, int(rng.integers(0, 5)), "ab")
        assert weighted_edit_distance(x, y, w) == min(all_alignment_costs(x, y, w))


def test_against_plain_dp(rng):
    for _ in range(150):
        w = random_weight_table(rng, "abc")
        x = random_string(rng, int(rng.integers(0, 15)), "abc")
        y = random_string(rng, int(rng.integers(0, 15)), "abc")
        full = plain_ed(x, y, w)
        assert weighted_edit_distance(x, y, w) == full
        k = int(rng.integers(0, 8 * SCALE))
        capped = weighted_edit_distance_capped(x, y, w, k)
        assert capped == (full if full <= k else INF)


@given(strs, strs)
def test_bounds(x, y):
    w = WeightTable(("a", "b", "c"), {("a", ""): 2 * SCALE, ("", "c"): 3 * SCALE})
    d = weighted_edit_distance(x, y, w)
    assert d >= abs(len(x) - len(y)) * SCALE
    assert d <= sum(w.w(c, "") for c in x) + sum(w.w("", c) for c in y)


@given(strs, strs)
def test_unit_reduction(x, y):
    assert weighted_edit_distance(x, y, unit_table()) == SCALE * levenshtein_dp(x, y)
    assert levenshtein(x, y) == levenshtein_dp(x, y)


def test_optimal_alignment_examples():
    u = unit_table("ab")
    cost, A = optimal_alignment("abab", "abab", u)
    assert cost == 0 and A.edits == 0 and len(A.breakpoints) == 2
    cost, A = optimal_alignment("ab", "b", u)
    assert cost == SCALE
    assert A.breakpoints[1:-1] == (Breakpoint(0, "a", 0, ""),)
    assert alignment_cost(A, "ab", "b", u) == SCALE


@given(strs, strs)
def test_witness_cost_and_shape(x, y):
    w = WeightTable(("a", "b", "c"), {("a", "b"): 3 * SCALE, ("c", ""): 2_500_000})
    cost, A = optimal_alignment(x, y, w)
    assert cost == weighted_edit_distance(x, y, w)
    assert alignment_cost(A, x, y, w) == cost
    path = A.path()
    assert path[0] == (0, 0) and path[-1] == (len(x), len(y))
    assert all(0 <= p2 - p <= 1 and 0 <= t2 - t <= 1 for (p, t), (p2, t2) in zip(path, path[1:]))
    assert len(A.breakpoints) == 2 + A.edits
    assert Alignment.from_path(path, x, y).breakpoints == A.breakpoints
    # the witness band of the distance threshold
    kappa = cost // SCALE
    assert all(-kappa <= t - p <= len(y) - len(x) + kappa for p, t in path)


def test_suboptimal_alignment_costs_more():
    u = unit_table("ab")
    x, y = "abab", "baba"
    path = [(0, 0)] + [(i, 0) for i in range(1, 5)] + [(4, j) for j in range(1, 5)]
    bad = Alignment.from_path(path, x, y)
    assert alignment_cost(bad, x, y, u) == 8 * SCALE >= weighted_edit_distance(x, y, u)
    with pytest.raises(ShapeError):
        alignment_cost(bad, "aba", y, u)


def test_align_image():
    u = unit_table("ab")
    _, ident = optimal_alignment("abba", "abba", u)
    for lo in range(5):
        for hi in range(lo, 5):
            assert align_image(ident, lo, hi) == (lo, hi)
    _, A = optimal_alignment("ab", "b", u)
    assert align_image(A, 0, 1) == (0, 0)
    with pytest.raises(RangeError):
        align_image(A, 1, 3)


def test_image_decomposition_sums(rng):
    for _ in range(80):
        w = random_weight_table(rng, "abc")
        x = random_string(rng, int(rng.integers(1, 12)), "abc")
        y = random_string(rng, int(rng.integers(0, 12)), "abc")
        cost, A = optimal_alignment(x, y, w)
        cuts = sorted(set(rng.integers(0, len(x) + 1, 3).tolist()) | {0, len(x)})
        total = 0
        images = []
        for lo, hi in zip(cuts, cuts[1:]):
            a, b = align_image(A, lo, hi)
            images.append((a, b))
            total += weighted_edit_distance(x[lo:hi], y[a:b], w)
        assert images[0][0] == 0 and images[-1][1] == len(y)
        assert all(b == c for (_, b), (c, _) in zip(images, images[1:]))
        assert total == cost


def test_lv_examples():
    A = unweighted_alignment_lv("abc", "abc", 0)
    assert A is not None and A.edits == 0
    A = unweighted_alignment_lv("kitten", "sitting", 3)
    assert A is not None and A.cost == 3 * SCALE and A.edits == 3
    assert alignment_cost(A, "kitten", "sitting", unit_table()) == 3 * SCALE
    assert unweighted_alignment_lv("kitten", "sitting", 2) is None


@given(strs, strs, st.integers(0, 8))
def test_lv_matches_dp(x, y, d):
    e = levenshtein_dp(x, y)
    A = unweighted_alignment_lv(x, y, d)
    if e > d:
        assert A is None
    else:
        assert A is not None and A.edits == e
        assert alignment_cost(A, x, y, unit_table()) == e * SCALE


def test_selfed_examples():
    assert self_edit_distance("", 10) == 0
    assert self_edit_distance("aaaa", 10) == 2
    assert self_edit_distance("ab", 10) == 3
    assert self_edit_distance("ab", 2) == INF


@given(st.text(alphabet="ab", max_size=16))
def test_selfed_matches_oracle(x):
    assert self_edit_distance(x, 64) == selfed_oracle(x)


def test_selfed_exhaustive_tiny():
    for n in range(6):
        for tup in itertools.product("ab", repeat=n):
            x = "".join(tup)
            assert self_edit_distance(x, 20) == selfed_oracle(x)
