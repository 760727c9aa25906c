"""Seeded instance generation, experiment runs and CSV reporting."""

from __future__ import annotations

import csv
import itertools
import math
import random
import re
import statistics
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import TextIO

from .cascade import reduce_and_solve
from .core import (
    VertexWeightedGraph,
    WeightedHypergraph,
    is_independent_set,
    matching_weight,
    parse_instance,
)
from .solvers import EXACT_CAP, exact_matching_bruteforce, get_solver, greedy_matching
from .transform import snap_eps

# --- weight distributions -------------------------------------------------

_DIST_RE = re.compile(r"^\s*(uniform|powerlaw)\s*\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*$")


@dataclass(frozen=True)
class WeightDist:
    """``uniform(lo, hi)`` or ``powerlaw(alpha, wmax)`` on ``[1, wmax]``."""

    kind: str
    a: float
    b: float

    @classmethod
    def parse(cls, text: str) -> WeightDist:
        m = _DIST_RE.match(text)
        if not m:
            raise ValueError(f"bad weight distribution {text!r}; use uniform(lo,hi) or powerlaw(alpha,wmax)")
        dist = cls(m.group(1), float(m.group(2)), float(m.group(3)))
        if dist.kind == "uniform" and not 1 <= dist.a <= dist.b:
            raise ValueError("uniform(lo,hi) needs 1 <= lo <= hi")
        if dist.kind == "powerlaw" and (dist.a <= 0 or dist.b < 1):
            raise ValueError("powerlaw(alpha,wmax) needs alpha > 0 and wmax >= 1")
        return dist

    def sample(self, rng: random.Random) -> float:
        if self.kind == "uniform":
            w = rng.uniform(self.a, self.b)
        else:
            # inverse CDF of density ~ w**-alpha truncated to [1, wmax]
            u = rng.random()
            alpha, wmax = self.a, self.b
            if abs(alpha - 1) < 1e-12:
                w = wmax ** u
            else:
                p = 1 - alpha
                w = (1 + u * (wmax ** p - 1)) ** (1 / p)
        return max(1.0, round(w, 6))

    def __str__(self) -> str:
        return f"{self.kind}({self.a:g},{self.b:g})"


# --- generation -----------------------------------------------------------

def max_edges(kind: str, n: int, s: int) -> int:
    if kind == "graph":
        return n * (n - 1) // 2
    if kind == "bipartite":
        left = (n + 1) // 2
        return left * (n - left)
    if kind == "hypergraph":
        low = 1 if s == 1 else 2
        return sum(math.comb(n, k) for k in range(low, min(s, n) + 1))
    raise ValueError(f"unknown instance kind {kind!r}; use graph, hypergraph or bipartite")


def _draw_edge(kind: str, n: int, s: int, rng: random.Random) -> tuple[int, ...]:
    if kind == "graph":
        return tuple(sorted(rng.sample(range(n), 2)))
    if kind == "bipartite":
        left = (n + 1) // 2
        return (rng.randrange(left), rng.randrange(left, n))
    low = 1 if s == 1 else 2
    size = rng.randint(low, min(s, n))
    return tuple(sorted(rng.sample(range(n), size)))


def _all_edges(kind: str, n: int, s: int) -> list[tuple[int, ...]]:
    if kind == "graph":
        return list(itertools.combinations(range(n), 2))
    if kind == "bipartite":
        left = (n + 1) // 2
        return [(a, b) for a in range(left) for b in range(left, n)]
    low = 1 if s == 1 else 2
    return [c for k in range(low, min(s, n) + 1) for c in itertools.combinations(range(n), k)]


def generate_instance(kind: str, n: int, m: int, s: int = 2, weights: str | WeightDist = "uniform(1,100)",
                      seed: int = 0) -> WeightedHypergraph:
    """Random instance without repeated edges; identical for identical arguments."""
    if kind in ("graph", "bipartite"):
        s = 2
    dist = weights if isinstance(weights, WeightDist) else WeightDist.parse(weights)
    if n < 0 or m < 0 or s < 1:
        raise ValueError("need n >= 0, m >= 0, s >= 1")
    limit = max_edges(kind, n, s)
    if m > limit:
        raise ValueError(f"{kind} on {n} vertices has at most {limit} distinct edges, asked for {m}")
    rng = random.Random(seed)
    if m > limit // 2:
        edges = rng.sample(_all_edges(kind, n, s), m)
    else:
        seen: set[tuple[int, ...]] = set()
        edges = []
        while len(edges) < m:
            e = _draw_edge(kind, n, s, rng)
            if e not in seen:
                seen.add(e)
                edges.append(e)
    ws = [dist.sample(rng) for _ in edges]
    return WeightedHypergraph(n, tuple(edges), tuple(ws), s)


def generate_vertex_weighted_graph(n: int, m: int, max_degree: int, max_weight: int,
                                   seed: int = 0) -> VertexWeightedGraph:
    """Random simple graph with at most ``m`` edges, degree ``<= max_degree``,
    integer weights uniform in ``1..max_weight``."""
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    degree = [0] * n
    edges = []
    for u, v in pairs:
        if len(edges) == m:
            break
        if degree[u] < max_degree and degree[v] < max_degree:
            edges.append((u, v))
            degree[u] += 1
            degree[v] += 1
    weights = [rng.randint(1, max_weight) for _ in range(n)]
    return VertexWeightedGraph.from_edges(n, edges, weights)


# --- experiment records ---------------------------------------------------

@dataclass
class ExperimentRecord:
    instance_id: str
    n: int
    m: int
    s: int
    eps: float
    solver: str
    cascade_weight: float | None = None
    solver_alone_weight: float | None = None
    greedy_weight: float | None = None
    opt: float | None = None
    ratio: float | None = None
    transform_us: float | None = None
    partition_us: float | None = None
    solve_us: float | None = None
    error: str = ""


TIMING_FIELDS = ("transform_us", "partition_us", "solve_us")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(records: Iterable, out: TextIO, timing: bool = True,
              record_type: type = None) -> None:
    """Write records as CSV with a fixed header.  ``timing=False`` blanks the
    wall-clock columns so reruns are byte-identical."""
    records = list(records)
    if record_type is None:
        record_type = type(records[0]) if records else ExperimentRecord
    names = [f.name for f in fields(record_type)]
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(names)
    for rec in records:
        row = []
        for name in names:
            value = getattr(rec, name)
            if not timing and name in TIMING_FIELDS:
                value = None
            row.append(_cell(value))
        writer.writerow(row)


def _phase_us(timings: list[dict[str, float]], phase: str) -> float:
    return round(statistics.median(t[phase] for t in timings) * 1e6, 1)


def run_row(instance_id: str, H: WeightedHypergraph, eps: float, solver_name: str, *,
            oracle_cap: int = 12, repeats: int = 1, warmup: bool = True,
            opt: float | None = None) -> ExperimentRecord:
    """One (instance, eps, solver) experiment.  The warm-up run is not timed."""
    eps = snap_eps(eps)
    rec = ExperimentRecord(instance_id, H.n, H.m, H.s, eps, solver_name)
    try:
        solver = get_solver(solver_name, eps=eps)
        if warmup:
            reduce_and_solve(H, eps, solver)
        timings = []
        result = None
        for _ in range(max(1, repeats)):
            result = reduce_and_solve(H, eps, solver)
            timings.append(result.timings)
        rec.cascade_weight = result.weight
        rec.transform_us = _phase_us(timings, "transform")
        rec.partition_us = _phase_us(timings, "partition")
        rec.solve_us = _phase_us(timings, "solve")
        rec.greedy_weight = matching_weight(H, greedy_matching(H))
        if solver_name != "exact" or H.m <= EXACT_CAP:
            rec.solver_alone_weight = matching_weight(H, solver.solve(H, H.max_weight))
        if opt is None and H.m <= oracle_cap:
            opt = matching_weight(H, exact_matching_bruteforce(H, cap=oracle_cap))
        if opt is not None:
            rec.opt = opt
            if opt > 0:
                rec.ratio = rec.cascade_weight / opt
    except Exception as exc:  # recorded per row, the run continues
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


# --- config ---------------------------------------------------------------

@dataclass
class InstanceSpec:
    id: str
    kind: str = "graph"
    n: int = 10
    m: int = 20
    s: int = 2
    weights: str = "uniform(1,1000000)"
    seed: int = 0
    count: int = 1
    file: str | None = None

    def instances(self, base_dir: Path | None = None) -> list[tuple[str, WeightedHypergraph]]:
        if self.file:
            path = Path(self.file)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            return [(self.id, parse_instance(path.read_text(encoding="utf-8")))]
        if self.count == 1:
            return [(self.id, generate_instance(self.kind, self.n, self.m, self.s, self.weights, self.seed))]
        return [
            (f"{self.id}-{i}", generate_instance(self.kind, self.n, self.m, self.s, self.weights, self.seed + i))
            for i in range(self.count)
        ]


@dataclass
class ExperimentConfig:
    eps: list[float] = field(default_factory=lambda: [0.1])
    solvers: list[str] = field(default_factory=lambda: ["greedy"])
    oracle_cap: int = 12
    repeats: int = 1
    warmup: bool = True
    jobs: int = 1
    instances: list[InstanceSpec] = field(default_factory=list)


def _bool(text: str) -> bool:
    if text.lower() in ("1", "true", "yes", "on"):
        return True
    if text.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_GLOBAL_KEYS = {
    "eps": lambda v: [float(x) for x in v.split(",") if x.strip()],
    "solvers": lambda v: [x.strip() for x in v.split(",") if x.strip()],
    "oracle_cap": int,
    "repeats": int,
    "warmup": _bool,
    "jobs": int,
}
_INSTANCE_KEYS = {"id": str, "kind": str, "n": int, "m": int, "s": int, "weights": str,
                  "seed": int, "count": int, "file": str}


def parse_config(text: str) -> ExperimentConfig:
    """Read ``key = value`` lines; each ``[instance]`` line opens a new instance block."""
    cfg = ExperimentConfig()
    current: dict | None = None
    blocks: list[dict] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[instance]":
            current = {}
            blocks.append(current)
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        table = _INSTANCE_KEYS if current is not None else _GLOBAL_KEYS
        if key not in table:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        try:
            parsed = table[key](value)
        except ValueError as exc:
            raise ValueError(f"config line {lineno}: {exc}") from None
        if current is not None:
            current[key] = parsed
        else:
            setattr(cfg, key, parsed)
    for i, block in enumerate(blocks):
        block.setdefault("id", f"inst{i}")
        cfg.instances.append(InstanceSpec(**block))
    return cfg


def run_experiment(cfg: ExperimentConfig, base_dir: Path | None = None,
                   jobs: int | None = None) -> list[ExperimentRecord]:
    """One record per (instance, eps, solver), in config order."""
    tasks = []
    for spec in cfg.instances:
        try:
            loaded = spec.instances(base_dir)
        except Exception as exc:
            rec = ExperimentRecord(spec.id, spec.n, spec.m, spec.s, float("nan"), "",
                                   error=f"{type(exc).__name__}: {exc}")
            tasks.append(rec)
            continue
        for inst_id, H in loaded:
            for eps in cfg.eps:
                for solver in cfg.solvers:
                    tasks.append((inst_id, H, eps, solver))

    def work(task):
        if isinstance(task, ExperimentRecord):
            return task
        inst_id, H, eps, solver = task
        return run_row(inst_id, H, eps, solver, oracle_cap=cfg.oracle_cap,
                       repeats=cfg.repeats, warmup=cfg.warmup)

    workers = jobs if jobs is not None else cfg.jobs
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(work, tasks))
    return [work(t) for t in tasks]


# --- MWIS experiments -----------------------------------------------------

@dataclass
class MwisRecord:
    instance_id: str
    n: int
    m: int
    max_degree: int
    eps: float
    solver: str
    weight: int | None = None
    opt: int | None = None
    ratio: float | None = None
    independent: bool | None = None
    error: str = ""


def mwis_row(instance_id: str, G: VertexWeightedGraph, eps: float, solver: str,
             opt: int | None = None) -> MwisRecord:
    from .mwis import mwis_via_duality

    eps = snap_eps(eps)
    rec = MwisRecord(instance_id, G.n, G.m, G.max_degree, eps, solver)
    try:
        chosen = mwis_via_duality(G, eps, solver)
        rec.weight = sum(G.weights[v] for v in chosen)
        rec.independent = is_independent_set(G, chosen)
        if opt is not None:
            rec.opt = opt
            rec.ratio = rec.weight / opt if opt else None
    except Exception as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def scaling_bench(sizes: Iterable[int], eps: float = 0.1, solver: str = "greedy", runs: int = 5,
                  seed: int = 0, weights: str = "uniform(1,1000000)") -> list[tuple[int, float]]:
    """Median solve-phase seconds for graphs with ``m`` edges and ``m/2`` vertices.

    Each size gets one untimed warm-up run.
    """
    black_box = get_solver(solver, eps=eps)
    out = []
    for m in sizes:
        H = generate_instance("graph", max(4, m // 2), m, 2, weights, seed)
        reduce_and_solve(H, eps, black_box)
        samples = []
        for _ in range(runs):
            result = reduce_and_solve(H, eps, black_box)
            samples.append(result.timings["solve"])
        out.append((m, statistics.median(samples)))
    return out
