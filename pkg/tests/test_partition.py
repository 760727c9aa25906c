import pytest
from hypothesis import given, strategies as st

from matchreduce.core import WeightedHypergraph
from matchreduce.partition import (
    CascadeParams,
    build_shift_partition,
    compute_params,
    render_partition_table,
    weight_levels,
)
from matchreduce.transform import RoundedInstance


@pytest.mark.parametrize("eps, s, k, l", [(0.5, 2, 3, 4), (0.5, 4, 3, 6), (0.25, 2, 5, 10)])
def test_compute_params(eps, s, k, l):
    p = compute_params(eps, s)
    assert (p.k, p.l) == (k, l)


def rounded(exps):
    H = WeightedHypergraph.build(2 * len(exps), [(2 * i, 2 * i + 1) for i in range(len(exps))],
                                 [1.5 ** e for e in exps])
    return RoundedInstance(H, 0.5, tuple(exps), H.weights)


def test_weight_levels():
    assert weight_levels(rounded([0, 5, 5, 9])) == [9, 5, 0]
    assert weight_levels(rounded([3])) == [3]
    assert weight_levels(rounded([])) == []


def test_shift_partition_examples():
    params = CascadeParams(eps=0.5, s=2, k=2, l=4)
    levels = list(range(9, -1, -1))
    P0 = build_shift_partition(levels, params, 0)
    assert P0.blocks == ((9, 8, 7, 6), (5, 4, 3, 2), (1, 0))
    assert P0.gap_flags == (False, True, False)
    assert P0.intervals == ((0,), (2,))
    P1 = build_shift_partition(levels, params, 1)
    assert P1.gap_flags == (True, False, True)
    assert P1.intervals == ((1,),)
    assert P1.interval_of(4) == 1 and P1.interval_of(9) is None


def test_short_single_block_that_is_a_gap():
    params = CascadeParams(eps=0.5, s=2, k=3, l=4)
    P = build_shift_partition([3, 1], params, 2)
    assert P.gap_flags == (True,)
    assert P.intervals == ()


def test_empty_levels():
    P = build_shift_partition([], CascadeParams(0.5, 2, 3, 4), 0)
    assert P.blocks == () and P.intervals == ()
    assert P.interval_of(0) is None


def test_shift_out_of_range():
    with pytest.raises(ValueError):
        build_shift_partition([1], CascadeParams(0.5, 2, 3, 4), 3)


def test_heaviest_interval_size():
    params = compute_params(0.25, 2)
    levels = list(range(200, -1, -1))
    for x in range(params.k):
        P = build_shift_partition(levels, params, x)
        if x < params.k - 1:
            assert len(P.intervals[0]) == params.k - 1 - x
            assert P.intervals[0][0] == 0
        else:
            assert P.gap_flags[0]


level_sets = st.lists(st.integers(0, 400), min_size=1, max_size=60)
param_choices = st.tuples(st.sampled_from([1 / 2, 1 / 3, 1 / 5, 1 / 10]), st.integers(2, 4))


@given(level_sets, param_choices)
def test_gap_coverage_and_block_sizes(exps, eps_s):
    params = compute_params(*eps_s)
    levels = sorted(set(exps), reverse=True)
    parts = [build_shift_partition(levels, params, x) for x in range(params.k)]
    nblocks = len(parts[0].blocks)
    for b in range(nblocks):
        assert sum(p.gap_flags[b] for p in parts) == 1
    for block in parts[0].blocks[:-1]:
        assert len(block) == params.l
    for level in levels:
        assert sum(p.interval_of(level) is None for p in parts) == 1
    for p in parts:
        assert all(len(iv) <= params.k - 1 for iv in p.intervals)
        # independent of multiplicities
        assert p == build_shift_partition(sorted(exps, reverse=True), params, p.x)


@given(level_sets, param_choices)
def test_interval_ratio_bound(exps, eps_s):
    eps, s = eps_s
    params = compute_params(eps, s)
    levels = sorted(set(exps), reverse=True)
    for x in range(params.k):
        P = build_shift_partition(levels, params, x)
        for j in range(1, len(P.intervals) + 1):
            hi, lo = P.interval_levels(j)
            assert (1 + eps) ** hi / (1 + eps) ** lo <= (1 + eps) ** (params.l * params.k)


def test_render_table():
    text = render_partition_table(list(range(9, -1, -1)), CascadeParams(0.5, 2, 2, 4))
    lines = text.splitlines()
    assert lines[0].startswith("eps=0.5 s=2 k=2 l=4")
    assert lines[2].split() == ["0", "9..6", "4", "1", "G"]
    assert lines[3].split() == ["1", "5..2", "4", "G", "1"]
