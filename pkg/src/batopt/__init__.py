"""Bat-swarm optimization: standard and incumbent-anchored update rules, the
classical 23-function benchmark suite, diversity instrumentation, run
statistics, and a random-key assignment solver."""

from .core import (
    AlgoParams,
    BatState,
    Bounds,
    IncumbentBest,
    RngStream,
    SwarmState,
    clamp_to_bounds,
    draw_frequency,
    init_swarm,
    update_incumbent,
)
from .benchmarks import ObjectiveSpec, lookup, names, register, registry_rows
from .optimizers import (
    ALGORITHMS,
    Candidate,
    RunConfig,
    RunResult,
    acceptance_step,
    ba_candidate,
    ba_step,
    local_walk,
    mba_candidate,
    mba_step,
    run,
    step_swarm,
    updated_pulse_rate,
    write_history_csv,
)
from .analysis import (
    DiversitySeries,
    SampleSummary,
    diversity,
    significance_label,
    summarize,
    wilcoxon_rank_sum,
    xpl_xpt,
)
from .assignment import (
    Assignment,
    CallTimeBreakdown,
    CostMatrix,
    assignment_cost,
    brute_force,
    call_center_matrix,
    call_handle_time,
    decode_keys,
    keys_objective,
    optimize_assignment,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AlgoParams",
    "Assignment",
    "BatState",
    "Bounds",
    "CallTimeBreakdown",
    "Candidate",
    "CostMatrix",
    "DiversitySeries",
    "IncumbentBest",
    "ObjectiveSpec",
    "RngStream",
    "RunConfig",
    "RunResult",
    "SampleSummary",
    "SwarmState",
    "acceptance_step",
    "assignment_cost",
    "ba_candidate",
    "ba_step",
    "brute_force",
    "call_center_matrix",
    "call_handle_time",
    "clamp_to_bounds",
    "decode_keys",
    "diversity",
    "draw_frequency",
    "init_swarm",
    "keys_objective",
    "local_walk",
    "lookup",
    "mba_candidate",
    "mba_step",
    "names",
    "optimize_assignment",
    "register",
    "registry_rows",
    "run",
    "significance_label",
    "step_swarm",
    "summarize",
    "update_incumbent",
    "updated_pulse_rate",
    "wilcoxon_rank_sum",
    "write_history_csv",
    "xpl_xpt",
]
