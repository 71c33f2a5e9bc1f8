"""Loop-interferometer simulation and sampler-driven QUBO optimization."""

from .interferometer import (
    CapacityError,
    FockState,
    InterferometerSpec,
    build_unitary,
    evolve_state,
    output_distribution,
    sample,
    threshold_readout,
)
from .oracle import ExactResult, JsspExactResult, exact_jssp, exact_maxcut, exact_qubo
from .qubo import (
    Graph,
    InfeasibleHorizonError,
    JsspInstance,
    Operation,
    QuboMatrix,
    Schedule,
    ViolationReport,
    build_variable_map,
    cost,
    cut_size,
    decode_schedule,
    encode_jssp,
    encode_maxcut,
    load_graph,
    load_jssp,
    load_qubo,
)
from .solver import (
    BbsConfig,
    BbsRun,
    SpsaParams,
    TilingPlan,
    batch_cost,
    draw_candidate,
    minimize_spsa,
    plan_tiling,
    quality,
    solve,
    spsa_step,
)

__all__ = [
    "BbsConfig",
    "BbsRun",
    "CapacityError",
    "ExactResult",
    "FockState",
    "Graph",
    "InfeasibleHorizonError",
    "InterferometerSpec",
    "JsspExactResult",
    "JsspInstance",
    "Operation",
    "QuboMatrix",
    "Schedule",
    "SpsaParams",
    "TilingPlan",
    "ViolationReport",
    "batch_cost",
    "build_unitary",
    "build_variable_map",
    "cost",
    "cut_size",
    "decode_schedule",
    "draw_candidate",
    "encode_jssp",
    "encode_maxcut",
    "evolve_state",
    "exact_jssp",
    "exact_maxcut",
    "exact_qubo",
    "load_graph",
    "load_jssp",
    "load_qubo",
    "minimize_spsa",
    "output_distribution",
    "plan_tiling",
    "quality",
    "sample",
    "solve",
    "spsa_step",
    "threshold_readout",
]
