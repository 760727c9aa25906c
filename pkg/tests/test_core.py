import pytest
from hypothesis import given, settings, strategies as st

from matchreduce.core import (
    InstanceFormatError,
    InvalidMatchingError,
    Matching,
    VertexWeightedGraph,
    WeightedHypergraph,
    format_solution,
    is_valid_matching,
    matching_weight,
    parse_instance,
    parse_solution,
    parse_vertex_weighted,
    serialize_instance,
    serialize_vertex_weighted,
)


def test_parse_single_edge():
    H = parse_instance("h 2 1 2\ne 5.0 0 1")
    assert H.n == 2 and H.m == 1 and H.s == 2
    assert H.edges == ((0, 1),)
    assert H.weights == (5.0,)


def test_parse_no_edges():
    H = parse_instance("h 3 0 2")
    assert H.n == 3 and H.m == 0


def test_comments_and_blank_lines_ignored():
    H = parse_instance("c a comment\n\nh 3 1 2\n# note\ne 2 2 0\n")
    assert H.edges == ((0, 2),)


@pytest.mark.parametrize("text, fragment, lineno", [
    ("h 2 1 2\ne 0.5 0 1", "below 1", 2),
    ("h 2 1 2\ne inf 0 1", "not finite", 2),
    ("h 2 1 2\ne nan 0 1", "not finite", 2),
    ("h 2 1 2\ne 3 0 2", "out of range", 2),
    ("h 3 1 2\ne 3 1 1", "duplicate vertex", 2),
    ("h 4 1 2\ne 3 0 1 2", "declared s=2", 2),
    ("h 4 1 2\ne x 0 1", "not a number", 2),
    ("h 4 1 2\nq 3 0 1", "expected edge line", 2),
    ("h 4 two 2", "not an integer", 1),
    ("p 4 1 2", "expected header", 1),
])
def test_parse_errors_name_the_line(text, fragment, lineno):
    with pytest.raises(InstanceFormatError) as info:
        parse_instance(text)
    assert fragment in str(info.value)
    assert info.value.lineno == lineno


def test_edge_count_mismatch():
    with pytest.raises(InstanceFormatError, match="declared 2 edges, found 1"):
        parse_instance("h 3 2 2\ne 1 0 1\n")
    with pytest.raises(InstanceFormatError, match="more than the declared 1"):
        parse_instance("h 3 1 2\ne 1 0 1\ne 1 1 2\n")


def path(*weights):
    return WeightedHypergraph.build(len(weights) + 1, [(i, i + 1) for i in range(len(weights))], weights)


def test_valid_matching_examples():
    H = path(1, 1)
    assert not is_valid_matching(H, {0, 1})
    H2 = WeightedHypergraph.build(4, [(0, 1), (2, 3)], [1, 1])
    assert is_valid_matching(H2, {0, 1})
    tri = WeightedHypergraph.build(3, [(0, 1), (1, 2), (0, 2)], [1, 2, 3])
    assert all(is_valid_matching(tri, {e}) for e in range(3))


def test_unknown_edge_is_invalid():
    assert not is_valid_matching(path(1), {5})
    assert not is_valid_matching(path(1), {-1})


def test_matching_weight_examples():
    H = WeightedHypergraph.build(4, [(0, 1), (2, 3)], [3, 4])
    assert matching_weight(H, Matching()) == 0
    assert matching_weight(H, Matching(frozenset({0, 1}))) == 7
    assert matching_weight(path(5), {0}) == 5
    with pytest.raises(InvalidMatchingError, match="vertex 1 covered twice"):
        matching_weight(path(1, 2), {0, 1})


def test_constructor_rejects_bad_weight():
    with pytest.raises(ValueError):
        WeightedHypergraph.build(2, [(0, 1)], [0.9])


@st.composite
def hypergraphs(draw, max_n=8, max_m=10, max_s=3):
    n = draw(st.integers(1, max_n))
    s = draw(st.integers(1, max_s))
    m = draw(st.integers(0, max_m))
    edges = [
        draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(s, n)))
        for _ in range(m)
    ]
    weights = draw(st.lists(
        st.floats(1, 1e9, allow_nan=False, allow_infinity=False), min_size=m, max_size=m))
    return WeightedHypergraph.build(n, edges, weights, s)


@given(hypergraphs())
def test_round_trip(H):
    assert parse_instance(serialize_instance(H)) == H


@given(hypergraphs(), st.data())
def test_valid_matching_closed_under_subset(H, data):
    ids = data.draw(st.sets(st.integers(0, max(H.m - 1, 0)), max_size=H.m)) if H.m else set()
    if is_valid_matching(H, ids):
        sub = data.draw(st.sets(st.sampled_from(sorted(ids)))) if ids else set()
        assert is_valid_matching(H, sub)


@given(hypergraphs(max_m=8))
@settings(max_examples=50)
def test_weight_additive_over_vertex_disjoint_parts(H):
    # greedily build a matching, then split it arbitrarily in two
    used, M = set(), []
    for e, edge in enumerate(H.edges):
        if used.isdisjoint(edge):
            used.update(edge)
            M.append(e)
    a, b = M[::2], M[1::2]
    assert matching_weight(H, M) == pytest.approx(matching_weight(H, a) + matching_weight(H, b), rel=1e-12)


def test_vertex_weighted_format_round_trip():
    G = VertexWeightedGraph.from_edges(4, [(0, 1), (1, 2)], [3, 1, 4, 2])
    text = serialize_vertex_weighted(G)
    assert text.splitlines()[0] == "g 4 2"
    assert parse_vertex_weighted(text) == G


@pytest.mark.parametrize("text, fragment", [
    ("g 2 1\nw 0 1\nw 1 1\nd 0 0", "self-loop"),
    ("g 2 1\nw 0 1\nd 0 1", "no weight line for vertex 1"),
    ("g 2 1\nw 0 0\nw 1 1\nd 0 1", "below 1"),
    ("g 2 2\nw 0 1\nw 1 1\nd 0 1\nd 1 0", "given twice"),
])
def test_vertex_weighted_errors(text, fragment):
    with pytest.raises(InstanceFormatError, match=fragment):
        parse_vertex_weighted(text)


def test_vertex_weighted_rejects_asymmetry():
    with pytest.raises(ValueError, match="symmetric"):
        VertexWeightedGraph(2, ((1,), ()), (1, 1))


def test_solution_format():
    text = format_solution(7.0, [2, 0])
    assert text == "value 7\nm 0\nm 2\n"
    assert parse_solution(text) == (7.0, [0, 2], "m")
    assert parse_solution(format_solution(2.5, [1], tag="v")) == (2.5, [1], "v")
