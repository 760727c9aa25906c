"""Command line entry point: ``matchreduce <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import bench
from .cascade import reduce_and_solve
from .core import (
    InstanceFormatError,
    find_conflict,
    format_solution,
    format_weight,
    is_independent_set,
    matching_weight,
    parse_instance,
    parse_solution,
    parse_vertex_weighted,
    serialize_instance,
    serialize_vertex_weighted,
)
from .mwis import mwis_via_duality
from .partition import compute_params, render_partition_table, weight_levels
from .solvers import get_solver
from .transform import clamp_rescale, round_to_powers, snap_eps


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_generate(args) -> int:
    if args.kind == "vgraph":
        G = bench.generate_vertex_weighted_graph(args.n, args.m, args.max_degree,
                                                 args.max_weight, args.seed)
        _write(args.output, serialize_vertex_weighted(G))
        return 0
    H = bench.generate_instance(args.kind, args.n, args.m, args.s, args.weights, args.seed)
    _write(args.output, serialize_instance(H))
    return 0


def cmd_solve(args) -> int:
    H = parse_instance(_read(args.input))
    solver = get_solver(args.solver, eps=args.eps)
    trace = None
    if args.trace:
        def trace(rec):
            print(json.dumps(rec, sort_keys=True), file=sys.stderr)
    result = reduce_and_solve(H, args.eps, solver, jobs=args.jobs, trace=trace)
    _write(args.output, format_solution(result.weight, result.best.edge_ids))
    return 0


def cmd_mwis(args) -> int:
    G = parse_vertex_weighted(_read(args.input))
    chosen = mwis_via_duality(G, args.eps, args.solver)
    value = sum(G.weights[v] for v in chosen)
    _write(args.output, format_solution(value, chosen, tag="v"))
    return 0


def verify_text(instance_text: str, solution_text: str) -> tuple[bool, str]:
    """Check a matching (or independent set) file against its instance."""
    declared, ids, tag = parse_solution(solution_text)
    header = instance_text.lstrip().split(None, 1)[0] if instance_text.strip() else ""
    if header == "g":
        G = parse_vertex_weighted(instance_text)
        bad = [v for v in ids if not 0 <= v < G.n]
        if bad:
            return False, f"INVALID: unknown vertex {bad[0]}"
        if len(set(ids)) != len(ids):
            return False, "INVALID: vertex listed twice"
        if not is_independent_set(G, ids):
            chosen = set(ids)
            u, v = next((u, v) for u in sorted(chosen) for v in G.adjacency[u] if v in chosen)
            return False, f"INVALID: vertices {u} and {v} are adjacent"
        actual = float(sum(G.weights[v] for v in ids))
    else:
        H = parse_instance(instance_text)
        problem = find_conflict(H, ids)
        if problem is not None:
            return False, f"INVALID: {problem}"
        actual = matching_weight(H, ids)
    if not math.isclose(declared, actual, rel_tol=1e-9, abs_tol=1e-9):
        return False, f"MISMATCH: declared {format_weight(declared)}, recomputed {format_weight(actual)}"
    return True, f"OK, weight {format_weight(actual)}"


def cmd_verify(args) -> int:
    ok, message = verify_text(_read(args.instance), _read(args.matching))
    print(message)
    return 0 if ok else 1


def cmd_bench(args) -> int:
    cfg_path = Path(args.config)
    cfg = bench.parse_config(cfg_path.read_text(encoding="utf-8"))
    records = bench.run_experiment(cfg, base_dir=cfg_path.parent, jobs=args.jobs)
    if args.output == "-":
        bench.write_csv(records, sys.stdout, timing=not args.no_timing)
    else:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            bench.write_csv(records, fh, timing=not args.no_timing)
    failed = sum(1 for r in records if r.error)
    if failed:
        print(f"{failed} of {len(records)} rows failed; see the error column", file=sys.stderr)
    return 0


def cmd_partition_debug(args) -> int:
    H = parse_instance(_read(args.input))
    eps = snap_eps(args.eps)
    clamped, _ = clamp_rescale(H, eps)
    R = round_to_powers(clamped, eps, original_weights=H.weights)
    params = compute_params(eps, max(2, H.s))
    sys.stdout.write(render_partition_table(weight_levels(R), params))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="matchreduce",
        description="Approximate maximum weight matching by reduction to bounded weight ranges.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("--kind", choices=["graph", "hypergraph", "bipartite", "vgraph"], default="graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, default=2, help="max edge size (hypergraph)")
    p.add_argument("--weights", default="uniform(1,100)",
                   help="uniform(lo,hi) or powerlaw(alpha,wmax)")
    p.add_argument("--max-degree", type=int, default=4, help="vgraph only")
    p.add_argument("--max-weight", type=int, default=20, help="vgraph only")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="approximate a maximum weight matching")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--solver", choices=["greedy", "exact"], default="greedy")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trace", action="store_true",
                   help="print one JSON line per solved interval to stderr")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("mwis", help="approximate a maximum weight independent set")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--solver", choices=["exact", "greedy", "dup-greedy"], default="exact")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_mwis)

    p = sub.add_parser("verify", help="check a matching or independent set file")
    p.add_argument("instance")
    p.add_argument("matching")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run an experiment config and write CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default="-")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--no-timing", action="store_true",
                   help="leave timing columns empty (byte-reproducible output)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("partition-debug", help="print the block/gap table of an instance")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_partition_debug)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
