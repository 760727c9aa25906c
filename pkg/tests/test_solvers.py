import random

import pytest
from hypothesis import given, settings, strategies as st

from matchreduce.core import WeightedHypergraph, is_valid_matching, matching_weight
from matchreduce.solvers import (
    SolverCapError,
    exact_matching_bruteforce,
    get_solver,
    greedy_matching,
)
from oracles import opt_matching

P4 = WeightedHypergraph.build(4, [(0, 1), (1, 2), (2, 3)], [3, 5, 4])


def test_greedy_examples():
    M = greedy_matching(P4)
    assert M.edge_ids == {1}
    assert matching_weight(P4, M) == 5
    opt, _ = opt_matching(P4.edges, P4.weights)
    assert opt == 7
    disjoint = WeightedHypergraph.build(4, [(0, 1), (2, 3)], [1, 2])
    assert greedy_matching(disjoint).edge_ids == {0, 1}
    star = WeightedHypergraph.build(4, [(0, 1), (0, 2), (0, 3)], [5, 4, 3])
    assert greedy_matching(star).edge_ids == {0}


def test_exact_examples():
    assert exact_matching_bruteforce(P4).edge_ids == {0, 2}
    tri = WeightedHypergraph.build(3, [(0, 1), (1, 2), (0, 2)], [1, 2, 3])
    assert exact_matching_bruteforce(tri).edge_ids == {2}
    hyper = WeightedHypergraph.build(8, [(0, 1, 2), (2, 3, 4), (5, 6, 7)], [5, 4, 3])
    M = exact_matching_bruteforce(hyper)
    assert M.edge_ids == {0, 2} and matching_weight(hyper, M) == 8


def test_exact_tie_break_smallest_ids():
    H = WeightedHypergraph.build(4, [(0, 1), (2, 3), (1, 2), (0, 3)], [1, 1, 1, 1])
    assert exact_matching_bruteforce(H).edge_ids == {0, 1}


def test_greedy_tie_break_lowest_id():
    H = WeightedHypergraph.build(3, [(1, 2), (0, 1)], [2, 2])
    assert greedy_matching(H).edge_ids == {0}


def test_exact_cap():
    H = WeightedHypergraph.build(42, [(2 * i, 2 * i + 1) for i in range(21)], [1] * 21)
    with pytest.raises(SolverCapError, match="cap 20"):
        exact_matching_bruteforce(H)
    assert len(exact_matching_bruteforce(H, cap=21)) == 21


def test_registry():
    assert get_solver("greedy").alpha == 0.5
    assert get_solver("exact").alpha == 1.0
    assert get_solver("dup-greedy", eps=0.1).name == "dup-greedy"
    with pytest.raises(ValueError, match="unknown solver"):
        get_solver("blossom")


@st.composite
def small_hypergraphs(draw):
    s = draw(st.integers(2, 3))
    n = draw(st.integers(2, 8))
    m = draw(st.integers(0, 12))
    edges = [draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(s, n))) for _ in range(m)]
    ws = [draw(st.integers(1, 50)) * 1.0 for _ in range(m)]
    return WeightedHypergraph.build(n, edges, ws, s)


@given(small_hypergraphs())
@settings(max_examples=150)
def test_solver_properties(H):
    g = greedy_matching(H)
    x = exact_matching_bruteforce(H)
    assert is_valid_matching(H, g) and is_valid_matching(H, x)
    # maximal
    covered = {v for e in g.edge_ids for v in H.edges[e]}
    assert all(covered & set(edge) for edge in H.edges)
    opt, _ = opt_matching(H.edges, H.weights)
    assert matching_weight(H, x) == pytest.approx(opt)
    assert matching_weight(H, g) >= opt / H.s - 1e-9
    assert greedy_matching(H) == g and exact_matching_bruteforce(H) == x


def test_exact_on_random_graphs_matches_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(4, 9)
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        edges = rng.sample(pairs, min(len(pairs), rng.randint(1, 16)))
        ws = [rng.uniform(1, 1e6) for _ in edges]
        H = WeightedHypergraph.build(n, edges, ws)
        opt, _ = opt_matching(H.edges, H.weights)
        assert matching_weight(H, exact_matching_bruteforce(H)) == pytest.approx(opt, rel=1e-12)
