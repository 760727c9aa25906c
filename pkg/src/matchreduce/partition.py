"""Blocks, gaps and large intervals over the weight levels.

Levels are exponents of ``1 + eps``.  Blocks are cut from the heaviest
present level downward over the contiguous exponent grid, ``l`` exponents
per block, so any two levels in different blocks separated by a full block
differ by a factor of at least ``s/eps``.  For shift ``x`` every block
``b`` with ``b % k == (k - 1 - x) % k`` is a gap; the maximal runs of
remaining blocks are the large intervals, numbered from 1 heaviest-first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .transform import RoundedInstance


@dataclass(frozen=True)
class CascadeParams:
    eps: float
    s: int
    k: int
    l: int


def levels_per_block(eps: float, s: int) -> int:
    """Smallest ``l >= 1`` with ``(1+eps)**l >= s/eps``."""
    target = s / eps
    l = max(1, math.ceil(math.log(target) / math.log1p(eps)))
    while l > 1 and (1 + eps) ** (l - 1) >= target:
        l -= 1
    while (1 + eps) ** l < target:
        l += 1
    return l


def compute_params(eps: float, s: int) -> CascadeParams:
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    if s < 2:
        raise ValueError(f"s must be at least 2, got {s}")
    k = math.ceil(1 / eps - 1e-9) + 1
    return CascadeParams(eps=eps, s=s, k=k, l=levels_per_block(eps, s))


def weight_levels(R: RoundedInstance) -> list[int]:
    """Distinct exponents present in ``R``, heaviest first."""
    return sorted(set(R.exponents), reverse=True)


@dataclass(frozen=True)
class ShiftPartition:
    x: int
    params: CascadeParams
    blocks: tuple[tuple[int, ...], ...]
    gap_flags: tuple[bool, ...]
    intervals: tuple[tuple[int, ...], ...]  # block indices, heaviest interval first

    @property
    def top(self) -> int | None:
        return self.blocks[0][0] if self.blocks else None

    def block_of(self, level: int) -> int:
        return (self.blocks[0][0] - level) // self.params.l

    def interval_levels(self, j: int) -> tuple[int, int]:
        """(heaviest, lightest) exponent of large interval ``j`` (1-based)."""
        blocks = self.intervals[j - 1]
        return self.blocks[blocks[0]][0], self.blocks[blocks[-1]][-1]

    @cached_property
    def _interval_of_block(self) -> dict[int, int]:
        return {b: j for j, bs in enumerate(self.intervals, start=1) for b in bs}

    def interval_of(self, level: int) -> int | None:
        """Large interval holding ``level``; None for gap levels or levels outside the grid."""
        if not self.blocks:
            return None
        b = self.block_of(level)
        if not 0 <= b < len(self.blocks) or level > self.blocks[0][0]:
            return None
        return self._interval_of_block.get(b)


def build_shift_partition(levels: list[int], params: CascadeParams, x: int) -> ShiftPartition:
    k, l = params.k, params.l
    if not 0 <= x < k:
        raise ValueError(f"shift x must lie in 0..{k - 1}, got {x}")
    if not levels:
        return ShiftPartition(x, params, (), (), ())
    top, bottom = max(levels), min(levels)
    grid = range(top, bottom - 1, -1)
    blocks = tuple(tuple(grid[i:i + l]) for i in range(0, len(grid), l))
    gap_residue = (k - 1 - x) % k
    gaps = tuple(b % k == gap_residue for b in range(len(blocks)))

    intervals: list[tuple[int, ...]] = []
    run: list[int] = []
    for b, is_gap in enumerate(gaps):
        if is_gap:
            if run:
                intervals.append(tuple(run))
            run = []
        else:
            run.append(b)
    if run:
        intervals.append(tuple(run))
    return ShiftPartition(x, params, blocks, gaps, tuple(intervals))


def render_partition_table(levels: list[int], params: CascadeParams) -> str:
    """Text table of block ranges and, per shift, gap (G) or interval number."""
    parts = [build_shift_partition(levels, params, x) for x in range(params.k)]
    present = set(levels)
    lines = [
        f"eps={params.eps:g} s={params.s} k={params.k} l={params.l} "
        f"levels={len(levels)} blocks={len(parts[0].blocks)}"
    ]
    header = ["block", "exponents", "present"] + [f"x={x}" for x in range(params.k)]
    rows = []
    for b, block in enumerate(parts[0].blocks):
        cells = [str(b), f"{block[0]}..{block[-1]}", str(sum(e in present for e in block))]
        for p in parts:
            if p.gap_flags[b]:
                cells.append("G")
            else:
                cells.append(str(p._interval_of_block[b]))
        rows.append(cells)
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    for r in [header] + rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"
