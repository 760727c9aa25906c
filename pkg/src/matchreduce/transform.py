"""Weight transformations applied before the cascade.

* ``clamp_rescale`` squeezes weights into ``[1, n/eps]``.
* ``round_to_powers`` rounds each weight down to a power of ``1 + eps``.
* ``integerize`` rounds down to a multiple of ``eps`` and lifts to integers,
  for black boxes that only take integer weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import WeightedHypergraph


def snap_eps(eps: float) -> float:
    """Round ``eps`` down to the nearest unit fraction ``1/q``."""
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    q = math.ceil(1 / eps - 1e-9)
    return 1 / max(q, 2)


def unit_denominator(eps: float) -> int:
    """Return ``q`` with ``eps == 1/q``, or raise."""
    q = round(1 / eps)
    if q < 1 or abs(1 / eps - q) > 1e-9 * q:
        raise ValueError(
            f"eps={eps!r} is not the reciprocal of an integer; snap it first with snap_eps()"
        )
    return q


def clamp_rescale(H: WeightedHypergraph, eps: float) -> tuple[WeightedHypergraph, float]:
    """Raise light edges to ``W*eps/n`` and rescale so weights lie in ``[1, n/eps]``.

    Returns the new instance and the multiplier ``n/(W*eps)`` applied after
    clamping (1 when the weights already fit).
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    if H.m == 0:
        return H, 1.0
    W = H.max_weight
    upper = H.n / eps
    if W <= upper:
        return H, 1.0
    floor_w = W * eps / H.n
    scale = H.n / (W * eps)
    # the clamp bounds absorb rounding in w * scale
    rescaled = [min(upper, max(1.0, max(w, floor_w) * scale)) for w in H.weights]
    return H.with_weights(rescaled), scale


@dataclass(frozen=True)
class RoundedInstance:
    """Instance whose edge ``i`` has weight ``(1+eps) ** exponents[i]``.

    ``base`` is the instance the exponents were taken from; ``original_weights``
    keeps the input weights for final scoring.
    """

    base: WeightedHypergraph
    eps: float
    exponents: tuple[int, ...]
    original_weights: tuple[float, ...]

    def rounded_weight(self, edge_id: int) -> float:
        return (1 + self.eps) ** self.exponents[edge_id]

    def rounded_weights(self) -> list[float]:
        b = 1 + self.eps
        return [b ** e for e in self.exponents]


def power_exponent(w: float, eps: float) -> int:
    """Largest ``e >= 0`` with ``(1+eps)**e <= w``, exact in float arithmetic."""
    base = 1 + eps
    e = max(0, int(math.floor(math.log(w) / math.log(base))))
    while e > 0 and base ** e > w:
        e -= 1
    while base ** (e + 1) <= w:
        e += 1
    return e


def round_to_powers(H: WeightedHypergraph, eps: float,
                    original_weights: tuple[float, ...] | None = None) -> RoundedInstance:
    exps = tuple(power_exponent(w, eps) for w in H.weights)
    if original_weights is None:
        original_weights = H.weights
    if len(original_weights) != H.m:
        raise ValueError("original_weights must have one entry per edge")
    return RoundedInstance(H, eps, exps, tuple(original_weights))


def integerize(H: WeightedHypergraph, eps: float) -> tuple[WeightedHypergraph, int]:
    """Round weights down to multiples of ``eps`` and multiply by ``D = 1/eps``.

    The floor is taken in exact rational arithmetic, so ``w - 1/D < new/D <= w``.
    """
    D = unit_denominator(eps)
    ints = [math.floor(Fraction(w) * D) for w in H.weights]
    return H.with_weights(ints), D
