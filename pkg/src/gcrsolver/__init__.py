"""Exact solving, verification and interactive play of pursuit games on
finite state spaces (cops-and-robbers style)."""

from gcrsolver.family import (
    EVADER,
    INFINITY,
    PURSUER,
    FamilyFormatError,
    GameFamily,
    State,
    Violation,
    read_family,
    validate_family,
    write_family,
)
from gcrsolver.oracle import AttractorTrace, Partition, attractor_classify, oracle_value, oracle_values, truncated_value
from gcrsolver.play import History, IllegalMoveError, best_response_value, capture_time, play_out, total_payoff
from gcrsolver.solver import (
    LabelTable,
    PlacementSummary,
    PositionalStrategy,
    check_optimality_equations,
    optimal_strategies,
    placement_minimax,
    vl_solve,
)
from gcrsolver.variants import Graph, GraphParseError, VariantSpec, build_family, parse_graph

__version__ = "0.1.0"

__all__ = [
    "EVADER",
    "INFINITY",
    "PURSUER",
    "AttractorTrace",
    "FamilyFormatError",
    "GameFamily",
    "Graph",
    "GraphParseError",
    "History",
    "IllegalMoveError",
    "LabelTable",
    "Partition",
    "PlacementSummary",
    "PositionalStrategy",
    "State",
    "VariantSpec",
    "Violation",
    "attractor_classify",
    "best_response_value",
    "build_family",
    "capture_time",
    "check_optimality_equations",
    "optimal_strategies",
    "oracle_value",
    "oracle_values",
    "parse_graph",
    "placement_minimax",
    "play_out",
    "read_family",
    "total_payoff",
    "truncated_value",
    "validate_family",
    "vl_solve",
    "write_family",
]
