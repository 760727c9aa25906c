"""Instances, matchings, and the text formats used to store them.

A graph is just a hypergraph whose edges all have two vertices, so there
is a single instance type for both.
"""

from __future__ import annotations

import io
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import TextIO, Union

Source = Union[str, TextIO]


class InstanceFormatError(ValueError):
    """Raised when an instance or matching file cannot be parsed."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvalidMatchingError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedHypergraph:
    """Edge-weighted hypergraph on vertices ``0..n-1``.

    Edge ``i`` is ``edges[i]`` (a sorted tuple of distinct vertices) with
    weight ``weights[i]``.  ``s`` bounds the edge cardinality.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]
    s: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.s < 1:
            raise ValueError("edge size bound s must be at least 1")
        if len(self.edges) != len(self.weights):
            raise ValueError("edges and weights differ in length")
        for i, (edge, w) in enumerate(zip(self.edges, self.weights)):
            if not edge:
                raise ValueError(f"edge {i} is empty")
            if len(edge) > self.s:
                raise ValueError(f"edge {i} has {len(edge)} vertices, more than s={self.s}")
            if len(set(edge)) != len(edge):
                raise ValueError(f"edge {i} repeats a vertex")
            for v in edge:
                if not 0 <= v < self.n:
                    raise ValueError(f"edge {i} uses vertex {v} outside 0..{self.n - 1}")
            if not (math.isfinite(w) and w >= 1):
                raise ValueError(f"edge {i} has weight {w!r}; weights must be finite and >= 1")

    @classmethod
    def build(cls, n: int, edges: Iterable[Iterable[int]], weights: Iterable[float],
              s: int | None = None) -> WeightedHypergraph:
        edge_tuple = tuple(tuple(sorted(e)) for e in edges)
        if s is None:
            s = max((len(e) for e in edge_tuple), default=2)
        return cls(n, edge_tuple, tuple(weights), s)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_weight(self) -> float:
        return max(self.weights, default=0.0)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, edge in enumerate(self.edges):
            for v in edge:
                inc[v].append(i)
        return tuple(tuple(lst) for lst in inc)

    def with_weights(self, weights: Iterable[float]) -> WeightedHypergraph:
        return WeightedHypergraph(self.n, self.edges, tuple(weights), self.s)


@dataclass(frozen=True)
class Matching:
    """A set of edge ids, optionally tagged with the (shift, interval) that
    produced each edge."""

    edge_ids: frozenset[int] = frozenset()
    provenance: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __iter__(self):
        return iter(sorted(self.edge_ids))


def _ids(M: Matching | Iterable[int]) -> list[int]:
    if isinstance(M, Matching):
        return sorted(M.edge_ids)
    return list(M)


def find_conflict(H: WeightedHypergraph, M: Matching | Iterable[int]) -> str | None:
    """Describe the first reason ``M`` is not a matching of ``H``, or None."""
    seen: dict[int, int] = {}
    ids = _ids(M)
    if len(set(ids)) != len(ids):
        return "edge listed twice"
    for e in ids:
        if not (isinstance(e, int) and 0 <= e < H.m):
            return f"unknown edge id {e}"
        for v in H.edges[e]:
            if v in seen:
                return f"vertex {v} covered twice"
            seen[v] = e
    return None


def is_valid_matching(H: WeightedHypergraph, M: Matching | Iterable[int]) -> bool:
    return find_conflict(H, M) is None


def matching_weight(H: WeightedHypergraph, M: Matching | Iterable[int]) -> float:
    """Total weight of ``M`` under the weights of ``H``."""
    problem = find_conflict(H, M)
    if problem is not None:
        raise InvalidMatchingError(problem)
    return math.fsum(H.weights[e] for e in sorted(_ids(M)))


@dataclass(frozen=True)
class VertexWeightedGraph:
    """Simple undirected graph with positive integer vertex weights."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n or len(self.weights) != self.n:
            raise ValueError("adjacency and weights must have one entry per vertex")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"parallel edges at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"vertex {v} has neighbor {u} outside 0..{self.n - 1}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"adjacency not symmetric for {v}-{u}")
        for v, w in enumerate(self.weights):
            if int(w) != w or w < 1:
                raise ValueError(f"vertex {v} has weight {w!r}; weights must be integers >= 1")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   weights: Iterable[int]) -> VertexWeightedGraph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(int(w) for w in weights))

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)


def is_independent_set(G: VertexWeightedGraph, vertices: Iterable[int]) -> bool:
    chosen = set(vertices)
    if any(not 0 <= v < G.n for v in chosen):
        return False
    return all(u not in chosen for v in chosen for u in G.adjacency[v])


# --- text formats ---------------------------------------------------------

def _read(source: Source) -> str:
    return source if isinstance(source, str) else source.read()


def _records(text: str):
    """Yield (lineno, fields) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c" or fields[0].startswith("#"):
            continue
        yield lineno, fields


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(f"{what} {token!r} is not an integer", lineno) from None


def _weight(token: str, lineno: int) -> float:
    try:
        w = float(token)
    except ValueError:
        raise InstanceFormatError(f"weight {token!r} is not a number", lineno) from None
    if not math.isfinite(w):
        raise InstanceFormatError(f"weight {token!r} is not finite", lineno)
    if w < 1:
        raise InstanceFormatError(f"weight {token} is below 1", lineno)
    return w


def format_weight(w: float) -> str:
    """Shortest exact decimal for ``w``; integral values print without '.0'."""
    if float(w).is_integer() and abs(w) < 1e15:
        return str(int(w))
    return repr(float(w))


def parse_instance(source: Source) -> WeightedHypergraph:
    """Parse ``h <n> <m> <s>`` followed by ``m`` lines ``e <weight> <v1> ... <vk>``."""
    records = _records(_read(source))
    try:
        lineno, fields = next(records)
    except StopIteration:
        raise InstanceFormatError("empty instance, expected header 'h <n> <m> <s>'") from None
    if fields[0] != "h" or len(fields) != 4:
        raise InstanceFormatError("expected header 'h <n> <m> <s>'", lineno)
    n, m, s = (_int(t, lineno, name) for t, name in zip(fields[1:], ("n", "m", "s")))
    if n < 0 or m < 0 or s < 1:
        raise InstanceFormatError("header needs n >= 0, m >= 0, s >= 1", lineno)

    edges: list[tuple[int, ...]] = []
    weights: list[float] = []
    for lineno, fields in records:
        if fields[0] != "e":
            raise InstanceFormatError(f"expected edge line 'e <weight> <v1> ...', got {fields[0]!r}", lineno)
        if len(edges) == m:
            raise InstanceFormatError(f"more than the declared {m} edges", lineno)
        if len(fields) < 3:
            raise InstanceFormatError("edge line needs a weight and at least one vertex", lineno)
        w = _weight(fields[1], lineno)
        verts = [_int(t, lineno, "vertex") for t in fields[2:]]
        for v in verts:
            if not 0 <= v < n:
                raise InstanceFormatError(f"vertex {v} out of range 0..{n - 1}", lineno)
        if len(set(verts)) != len(verts):
            raise InstanceFormatError("duplicate vertex within edge", lineno)
        if len(verts) > s:
            raise InstanceFormatError(f"edge has {len(verts)} vertices, declared s={s}", lineno)
        edges.append(tuple(sorted(verts)))
        weights.append(w)
    if len(edges) != m:
        raise InstanceFormatError(f"declared {m} edges, found {len(edges)}")
    return WeightedHypergraph(n, tuple(edges), tuple(weights), s)


def serialize_instance(H: WeightedHypergraph) -> str:
    lines = [f"h {H.n} {H.m} {H.s}"]
    for edge, w in zip(H.edges, H.weights):
        lines.append("e " + format_weight(w) + " " + " ".join(map(str, edge)))
    return "\n".join(lines) + "\n"


def parse_vertex_weighted(source: Source) -> VertexWeightedGraph:
    """Parse ``g <n> <m>``, then ``n`` lines ``w <vertex> <weight>`` and ``m`` lines ``d <u> <v>``."""
    records = _records(_read(source))
    try:
        lineno, fields = next(records)
    except StopIteration:
        raise InstanceFormatError("empty graph, expected header 'g <n> <m>'") from None
    if fields[0] != "g" or len(fields) != 3:
        raise InstanceFormatError("expected header 'g <n> <m>'", lineno)
    n, m = _int(fields[1], lineno, "n"), _int(fields[2], lineno, "m")
    if n < 0 or m < 0:
        raise InstanceFormatError("header needs n >= 0, m >= 0", lineno)

    weights: list[int | None] = [None] * n
    edges: set[tuple[int, int]] = set()
    for lineno, fields in records:
        tag = fields[0]
        if tag not in ("w", "d") or len(fields) != 3:
            raise InstanceFormatError("expected 'w <vertex> <weight>' or 'd <u> <v>'", lineno)
        a, b = _int(fields[1], lineno, "vertex"), _int(fields[2], lineno, "value")
        if not 0 <= a < n:
            raise InstanceFormatError(f"vertex {a} out of range 0..{n - 1}", lineno)
        if tag == "w":
            if weights[a] is not None:
                raise InstanceFormatError(f"weight of vertex {a} given twice", lineno)
            if b < 1:
                raise InstanceFormatError(f"vertex weight {b} is below 1", lineno)
            weights[a] = b
        else:
            if not 0 <= b < n:
                raise InstanceFormatError(f"vertex {b} out of range 0..{n - 1}", lineno)
            if a == b:
                raise InstanceFormatError(f"self-loop at vertex {a}", lineno)
            key = (min(a, b), max(a, b))
            if key in edges:
                raise InstanceFormatError(f"edge {a}-{b} given twice", lineno)
            edges.add(key)
    missing = [v for v, w in enumerate(weights) if w is None]
    if missing:
        raise InstanceFormatError(f"no weight line for vertex {missing[0]}")
    if len(edges) != m:
        raise InstanceFormatError(f"declared {m} edges, found {len(edges)}")
    return VertexWeightedGraph.from_edges(n, sorted(edges), weights)  # type: ignore[arg-type]


def serialize_vertex_weighted(G: VertexWeightedGraph) -> str:
    edges = G.edge_list
    lines = [f"g {G.n} {len(edges)}"]
    lines += [f"w {v} {w}" for v, w in enumerate(G.weights)]
    lines += [f"d {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def format_solution(value: float, ids: Iterable[int], tag: str = "m") -> str:
    """Matching file: ``value <w>`` then one ``m <edge-id>`` line per edge.

    Independent sets use the same layout with tag ``v``.
    """
    lines = [f"value {format_weight(value)}"]
    lines += [f"{tag} {i}" for i in sorted(ids)]
    return "\n".join(lines) + "\n"


def parse_solution(source: Source) -> tuple[float, list[int], str]:
    """Return (declared value, ids, tag) from a matching or vertex-set file."""
    records = _records(_read(source))
    try:
        lineno, fields = next(records)
    except StopIteration:
        raise InstanceFormatError("empty solution, expected 'value <weight>'") from None
    if fields[0] != "value" or len(fields) != 2:
        raise InstanceFormatError("expected 'value <weight>'", lineno)
    try:
        value = float(fields[1])
    except ValueError:
        raise InstanceFormatError(f"value {fields[1]!r} is not a number", lineno) from None
    ids: list[int] = []
    tag = None
    for lineno, fields in records:
        if fields[0] not in ("m", "v") or len(fields) != 2:
            raise InstanceFormatError("expected 'm <edge-id>' or 'v <vertex>'", lineno)
        if tag is None:
            tag = fields[0]
        elif fields[0] != tag:
            raise InstanceFormatError("mixes 'm' and 'v' lines", lineno)
        ids.append(_int(fields[1], lineno, "id"))
    return value, ids, tag or "m"
