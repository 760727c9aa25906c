"""Shifted cascade over large intervals with a pluggable black-box solver.

For each shift the large intervals are solved heaviest-first; after every
sub-solve all remaining edges touching a matched vertex are dropped.  The
shift whose union matching is heaviest under the original weights wins.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .core import Matching, WeightedHypergraph, is_valid_matching, matching_weight
from .partition import (
    CascadeParams,
    ShiftPartition,
    build_shift_partition,
    compute_params,
    weight_levels,
)
from .transform import RoundedInstance, clamp_rescale, round_to_powers, snap_eps


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverInterface:
    """A black-box matching solver.

    ``solve(H, weight_bound)`` receives an instance whose weights lie in
    ``[1, weight_bound]`` and returns a Matching of it.  ``alpha`` is the
    claimed approximation factor; it is only reported, never relied on.
    """

    name: str
    alpha: float
    solve: Callable[[WeightedHypergraph, float], Matching]


@dataclass(frozen=True)
class ShiftOutcome:
    x: int
    matching: Matching
    weight: float


@dataclass(frozen=True)
class CascadeResult:
    best: Matching
    best_x: int
    weight: float
    per_shift: tuple[ShiftOutcome, ...]
    params: CascadeParams
    eps: float
    clamp_scale: float
    timings: dict[str, float] = field(default_factory=dict, compare=False)


TraceSink = Callable[[dict], None]


def run_shift(R: RoundedInstance, P: ShiftPartition, solver: SolverInterface,
              trace: TraceSink | None = None) -> Matching:
    H = R.base
    base = 1 + R.eps
    alive = [True] * H.m
    incidence = H.incidence

    by_interval: list[list[int]] = [[] for _ in P.intervals]
    for e, level in enumerate(R.exponents):
        j = P.interval_of(level)
        if j is not None:
            by_interval[j - 1].append(e)

    chosen: dict[int, tuple[int, int]] = {}
    for j, members in enumerate(by_interval, start=1):
        offered = [e for e in members if alive[e]]
        if not offered:
            continue
        hi, lo = P.interval_levels(j)

        vmap: dict[int, int] = {}
        sub_edges = []
        for e in offered:
            sub_edges.append(tuple(vmap.setdefault(v, len(vmap)) for v in H.edges[e]))
        sub_weights = tuple(base ** (R.exponents[e] - lo) for e in offered)
        sub = WeightedHypergraph(len(vmap), tuple(sub_edges), sub_weights, H.s)

        result = solver.solve(sub, base ** (hi - lo))
        if not is_valid_matching(sub, result.edge_ids):
            raise SolverError(
                f"solver {solver.name!r} returned an invalid matching on the "
                f"sub-instance for shift x={P.x}, interval j={j} "
                f"(n={sub.n}, m={sub.m})"
            )
        picked = sorted(offered[i] for i in result.edge_ids)
        for e in picked:
            chosen[e] = (P.x, j)
            for v in H.edges[e]:
                for f in incidence[v]:
                    alive[f] = False
        if trace is not None:
            trace({
                "x": P.x,
                "j": j,
                "levels": [hi, lo],
                "n": sub.n,
                "m": sub.m,
                "matched": len(picked),
                "weight": sum(R.rounded_weight(e) for e in picked),
            })
    return Matching(frozenset(chosen), chosen)


def reduce_and_solve(H: WeightedHypergraph, eps: float, solver: SolverInterface, *,
                     jobs: int = 1, trace: TraceSink | None = None) -> CascadeResult:
    """Approximate a maximum weight matching of ``H`` through ``solver``.

    ``eps`` is snapped down to a unit fraction first.  With ``jobs > 1``
    shifts run on a thread pool; the result does not depend on ``jobs``.
    """
    eps = snap_eps(eps)
    t0 = time.perf_counter()
    clamped, scale = clamp_rescale(H, eps)
    R = round_to_powers(clamped, eps, original_weights=H.weights)
    t1 = time.perf_counter()
    params = compute_params(eps, max(2, H.s))
    levels = weight_levels(R)
    partitions = [build_shift_partition(levels, params, x) for x in range(params.k)]
    t2 = time.perf_counter()

    def one(P: ShiftPartition) -> tuple[Matching, list[dict]]:
        records: list[dict] = []
        M = run_shift(R, P, solver, records.append if trace is not None else None)
        return M, records

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(one, partitions))
    else:
        runs = [one(P) for P in partitions]
    t3 = time.perf_counter()

    outcomes = []
    for P, (M, records) in zip(partitions, runs):
        if trace is not None:
            for rec in records:
                trace(rec)
        outcomes.append(ShiftOutcome(P.x, M, matching_weight(H, M)))
    best = max(outcomes, key=lambda o: (o.weight, -o.x))
    return CascadeResult(
        best=best.matching,
        best_x=best.x,
        weight=best.weight,
        per_shift=tuple(outcomes),
        params=params,
        eps=eps,
        clamp_scale=scale,
        timings={"transform": t1 - t0, "partition": t2 - t1, "solve": t3 - t2},
    )
