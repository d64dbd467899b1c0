"""Unit-capacity minimum-cost circulation by cost scaling with approximate shortest paths."""
from .graph import FlowState, InvariantError, MultiGraph
from .generators import Instance, InstanceSpec, generate
from .oracles import cycle_canceling_oracle, exhaustive_oracle
from .refine import PhaseStats, RefineStats, refine
from .scaling import (
    InfeasibleError,
    Solution,
    SolverConfig,
    certify,
    certify_report,
    min_cost_circulation,
    min_cost_st_flow,
)

__all__ = [
    "FlowState",
    "InfeasibleError",
    "Instance",
    "InstanceSpec",
    "InvariantError",
    "MultiGraph",
    "PhaseStats",
    "RefineStats",
    "Solution",
    "SolverConfig",
    "certify",
    "certify_report",
    "cycle_canceling_oracle",
    "exhaustive_oracle",
    "generate",
    "min_cost_circulation",
    "min_cost_st_flow",
    "refine",
]
