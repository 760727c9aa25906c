"""Approximate maximum weight matching in hypergraphs by reducing arbitrary
weights to bounded weight ranges around a black-box solver."""

from .cascade import CascadeResult, SolverError, SolverInterface, reduce_and_solve, run_shift
from .core import (
    InstanceFormatError,
    InvalidMatchingError,
    Matching,
    VertexWeightedGraph,
    WeightedHypergraph,
    is_valid_matching,
    matching_weight,
    parse_instance,
    parse_vertex_weighted,
    serialize_instance,
    serialize_vertex_weighted,
)
from .mwis import (
    dual_hypergraph,
    duplicate_vertices,
    greedy_mis,
    matching_to_independent_set,
    mwis_via_duality,
)
from .partition import CascadeParams, ShiftPartition, build_shift_partition, compute_params, weight_levels
from .solvers import exact_matching_bruteforce, get_solver, greedy_matching
from .transform import RoundedInstance, clamp_rescale, integerize, round_to_powers, snap_eps

__version__ = "0.1.0"
