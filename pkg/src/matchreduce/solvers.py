"""Black-box solvers for the cascade: greedy and exact branch-and-bound."""

from __future__ import annotations

from collections.abc import Callable

from .cascade import SolverInterface
from .core import Matching, WeightedHypergraph

EXACT_CAP = 20


class SolverCapError(ValueError):
    pass


def greedy_matching(H: WeightedHypergraph, weight_bound: float | None = None) -> Matching:
    """Heaviest-first greedy; ties go to the lower edge id.

    Returns a maximal matching within a factor 1/s of optimal.
    """
    order = sorted(range(H.m), key=lambda e: (-H.weights[e], e))
    covered = [False] * H.n
    picked = []
    for e in order:
        edge = H.edges[e]
        if any(covered[v] for v in edge):
            continue
        for v in edge:
            covered[v] = True
        picked.append(e)
    return Matching(frozenset(picked))


def exact_matching_bruteforce(H: WeightedHypergraph, weight_bound: float | None = None,
                              cap: int = EXACT_CAP) -> Matching:
    """Maximum weight matching by depth-first branch-and-bound.

    Among optimal matchings the lexicographically smallest sorted id tuple
    is returned.  Refuses instances with more than ``cap`` edges.
    """
    m = H.m
    if m > cap:
        raise SolverCapError(
            f"exact solver refuses {m} edges (cap {cap}); use the greedy solver "
            "or a smaller instance"
        )
    order = sorted(range(m), key=lambda e: (-H.weights[e], e))
    masks = [sum(1 << v for v in H.edges[e]) for e in order]
    weights = [H.weights[e] for e in order]
    suffix = [0.0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]

    best_w = -1.0
    best_key: tuple[int, ...] = ()
    stack: list[int] = []

    def dfs(i: int, used: int, total: float) -> None:
        nonlocal best_w, best_key
        if total + suffix[i] < best_w:
            return
        if i == m:
            key = tuple(sorted(stack))
            if total > best_w or (total == best_w and key < best_key):
                best_w, best_key = total, key
            return
        if not used & masks[i]:
            stack.append(order[i])
            dfs(i + 1, used | masks[i], total + weights[i])
            stack.pop()
        dfs(i + 1, used, total)

    dfs(0, 0, 0.0)
    return Matching(frozenset(best_key))


def _greedy(eps: float | None = None, **_) -> SolverInterface:
    return SolverInterface("greedy", 0.5, greedy_matching)


def _exact(eps: float | None = None, cap: int = EXACT_CAP, **_) -> SolverInterface:
    return SolverInterface("exact", 1.0, lambda H, W: exact_matching_bruteforce(H, W, cap=cap))


def _dup_greedy(eps: float | None = None, **kw) -> SolverInterface:
    from .mwis import dup_greedy_solver

    if eps is None:
        raise ValueError("dup-greedy needs eps for integerization")
    return dup_greedy_solver(eps, **kw)


SOLVERS: dict[str, Callable[..., SolverInterface]] = {
    "greedy": _greedy,
    "exact": _exact,
    "dup-greedy": _dup_greedy,
}


def get_solver(name: str, **kwargs) -> SolverInterface:
    try:
        factory = SOLVERS[name]
    except KeyError:
        raise ValueError(f"unknown solver {name!r}; choose from {sorted(SOLVERS)}") from None
    return factory(**kwargs)
