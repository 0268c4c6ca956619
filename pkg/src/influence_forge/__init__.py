"""Influence centrality of two competing stubborn agents on directed graphs.

The package models opinion dynamics where every agent keeps averaging its
neighbours' opinions while two stubborn agents anchor to their initial ones,
measures each stubborn agent's share of the final average opinion, and
certifies how redirecting an agent's attention (an edge modification)
shifts those shares — including certificates that hold for every choice of
edge weights, and a planner that lifts a chosen agent to dominance.
"""

from .dynamics import (
    CentralityVector,
    OpinionState,
    SimulationResult,
    centrality_pair,
    influence_centrality,
    simulate,
    steady_state,
    step,
)
from .errors import (
    ConvergenceError,
    GraphError,
    ModificationError,
    NotTypeC1Error,
    SchemaError,
)
from .generate import GeneratedGraph, generate_c1, random_profile, redraw_weights
from .graph import (
    EdgeModification,
    StubbornProfile,
    ValidationReport,
    WeightedDigraph,
    apply_modification,
    normalized,
    validate,
)
from .graph_io import GraphBundle, load_graph, save_graph
from .mods import (
    CertificationContext,
    ModEffect,
    ModificationVerdict,
    PlanResult,
    PlanStep,
    classify_modification,
    classify_redundant,
    classify_useful,
    enumerate_modifications,
    exact_delta_pair,
    find_useful_mods,
    is_permissible,
    plan_sequence,
    verify_mod_effect,
)
from .sfg import (
    ReducedGains,
    SignalFlowGraph,
    build_sfg,
    direct_path_gain_sum,
    eliminate_self_loops,
    gain_centrality,
    predicted_delta,
    reduce,
)
from .sweep import SweepReport, SweepRow, weight_sweep
from .topology import (
    LevelDistribution,
    TClassification,
    classify_nodes,
    every_path_hits,
    global_communicators,
    is_type_c1,
    level_distribution,
    reachable_avoiding,
)

__version__ = "0.1.0"

__all__ = [
    "CentralityVector",
    "CertificationContext",
    "ConvergenceError",
    "EdgeModification",
    "GeneratedGraph",
    "GraphBundle",
    "GraphError",
    "LevelDistribution",
    "ModEffect",
    "ModificationError",
    "ModificationVerdict",
    "NotTypeC1Error",
    "OpinionState",
    "PlanResult",
    "PlanStep",
    "ReducedGains",
    "SchemaError",
    "SignalFlowGraph",
    "SimulationResult",
    "StubbornProfile",
    "SweepReport",
    "SweepRow",
    "TClassification",
    "ValidationReport",
    "WeightedDigraph",
    "apply_modification",
    "build_sfg",
    "centrality_pair",
    "classify_modification",
    "classify_nodes",
    "classify_redundant",
    "classify_useful",
    "direct_path_gain_sum",
    "eliminate_self_loops",
    "enumerate_modifications",
    "every_path_hits",
    "exact_delta_pair",
    "find_useful_mods",
    "gain_centrality",
    "generate_c1",
    "global_communicators",
    "influence_centrality",
    "is_permissible",
    "is_type_c1",
    "level_distribution",
    "load_graph",
    "normalized",
    "plan_sequence",
    "predicted_delta",
    "random_profile",
    "reachable_avoiding",
    "redraw_weights",
    "reduce",
    "save_graph",
    "simulate",
    "steady_state",
    "step",
    "validate",
    "verify_mod_effect",
    "weight_sweep",
]
