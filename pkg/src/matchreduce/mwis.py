"""Maximum weight independent set through matchings in the dual hypergraph.

Graph edges become hypergraph vertices and each graph vertex becomes the
hyperedge of its incident edges, so independent sets and matchings
correspond one to one.  The ``dup-greedy`` black box solves weighted
sub-instances by replacing each vertex with ``weight`` unweighted copies and
running minimum-degree greedy.
"""

from __future__ import annotations

import functools
import heapq
from collections.abc import Sequence
from dataclasses import dataclass

from .cascade import SolverInterface, reduce_and_solve
from .core import (
    InvalidMatchingError,
    Matching,
    VertexWeightedGraph,
    WeightedHypergraph,
    find_conflict,
)
from .solvers import get_solver
from .transform import integerize, snap_eps

DUPLICATION_CAP = 10**5


def dual_hypergraph(G: VertexWeightedGraph) -> WeightedHypergraph:
    """Hyperedge ``v`` holds the ids of the graph edges at ``v``.

    Graph edges are numbered in ``G.edge_list`` order.  An isolated vertex
    gets a private dummy hypergraph vertex so it stays selectable.
    """
    edge_id = {uv: i for i, uv in enumerate(G.edge_list)}
    n = len(edge_id)
    hyperedges = []
    for v in range(G.n):
        inc = [edge_id[(min(u, v), max(u, v))] for u in G.adjacency[v]]
        if not inc:
            inc = [n]
            n += 1
        hyperedges.append(tuple(sorted(inc)))
    return WeightedHypergraph(n, tuple(hyperedges), tuple(float(w) for w in G.weights),
                              max(1, G.max_degree))


def matching_to_independent_set(G: VertexWeightedGraph, M: Matching,
                                dual: WeightedHypergraph | None = None) -> list[int]:
    if dual is None:
        dual = dual_hypergraph(G)
    problem = find_conflict(dual, M)
    if problem is not None:
        raise InvalidMatchingError(f"not a matching of the dual hypergraph: {problem}")
    return sorted(M.edge_ids)


@dataclass(frozen=True)
class DuplicatedGraph:
    """Unweighted graph in which vertex ``v`` of the source has copies
    ``offsets[v] .. offsets[v] + weight(v) - 1``.

    All copies of ``v`` share one neighbor list object.
    """

    n: int
    adjacency: tuple[Sequence[int], ...]
    copy_of: tuple[int, ...]
    offsets: tuple[int, ...]

    def copies(self, v: int) -> range:
        end = self.offsets[v + 1] if v + 1 < len(self.offsets) else self.n
        return range(self.offsets[v], end)


def duplicate_vertices(G: VertexWeightedGraph, cap: int = DUPLICATION_CAP) -> DuplicatedGraph:
    total = sum(G.weights)
    if total > cap:
        raise ValueError(
            f"vertex duplication would create {total} vertices (cap {cap}); "
            "weights are too large for this reduction"
        )
    offsets = []
    acc = 0
    for w in G.weights:
        offsets.append(acc)
        acc += w
    copy_of = tuple(v for v, w in enumerate(G.weights) for _ in range(w))
    shared = [
        tuple(c for u in G.adjacency[v] for c in range(offsets[u], offsets[u] + G.weights[u]))
        for v in range(G.n)
    ]
    adjacency = tuple(shared[v] for v in copy_of)
    return DuplicatedGraph(total, adjacency, copy_of, tuple(offsets))


def greedy_mis(adjacency: Sequence[Sequence[int]]) -> list[int]:
    """Repeatedly take a minimum-degree vertex of the residual graph (lowest id
    on ties) and delete it with its neighbors."""
    n = len(adjacency)
    degree = [len(a) for a in adjacency]
    removed = [False] * n
    heap = [(d, v) for v, d in enumerate(degree)]
    heapq.heapify(heap)
    chosen = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != degree[v]:
            continue
        chosen.append(v)
        removed[v] = True
        dropped = [u for u in adjacency[v] if not removed[u]]
        for u in dropped:
            removed[u] = True
        for u in dropped:
            for w in adjacency[u]:
                if not removed[w]:
                    degree[w] -= 1
                    heapq.heappush(heap, (degree[w], w))
    return sorted(chosen)


def conflict_graph(H: WeightedHypergraph, weights: Sequence[int]) -> VertexWeightedGraph:
    """Vertex per hyperedge, adjacent when the hyperedges intersect."""
    nbrs: list[set[int]] = [set() for _ in range(H.m)]
    for inc in H.incidence:
        for a in inc:
            nbrs[a].update(inc)
    for a in range(H.m):
        nbrs[a].discard(a)
    return VertexWeightedGraph(H.m, tuple(tuple(sorted(s)) for s in nbrs), tuple(weights))


def dup_greedy_solver(eps: float, cap: int = DUPLICATION_CAP, degree: int = 2) -> SolverInterface:
    """Black box: integerize, read the sub-instance as a weighted conflict graph,
    duplicate vertices, run minimum-degree greedy, map back.

    ``alpha`` is the nominal 1/(degree+1) of greedy on the unduplicated graph.
    Shifts often hand over identical sub-instances, so results are memoized.
    """
    eps = snap_eps(eps)

    @functools.lru_cache(maxsize=1024)
    def solve_cached(H: WeightedHypergraph) -> Matching:
        ints, _ = integerize(H, eps)
        G = conflict_graph(H, [int(w) for w in ints.weights])
        dup = duplicate_vertices(G, cap)
        picked = {dup.copy_of[c] for c in greedy_mis(dup.adjacency)}
        return Matching(frozenset(picked))

    def solve(H: WeightedHypergraph, weight_bound: float) -> Matching:
        return solve_cached(H)

    return SolverInterface("dup-greedy", 1 / (degree + 1), solve)


def mwis_via_duality(G: VertexWeightedGraph, eps: float, solver: str = "exact",
                     **solver_options) -> list[int]:
    """Approximate maximum weight independent set of ``G``."""
    dual = dual_hypergraph(G)
    if solver == "dup-greedy":
        solver_options.setdefault("degree", max(2, G.max_degree))
    black_box = get_solver(solver, eps=eps, **solver_options)
    result = reduce_and_solve(dual, eps, black_box)
    return matching_to_independent_set(G, result.best, dual)
