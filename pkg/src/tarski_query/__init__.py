"""Tarski fixed-point search on the grid {0, ..., n-1}^k in the query model."""
from .lattice import GridShape, Point, clamp_to_box, iterate_points, join, leq, meet
from .oracle import (
    HiddenPointInstance,
    HiddenPointOracle,
    TableInstance,
    TableOracle,
    eval_hidden_point,
    lift_clamp,
    make_counting,
    restrict_box,
)
from .solver import (
    SOLVERS,
    SolveOutcome,
    dnc_fixed_point,
    kleene_from_bottom,
    kleene_from_top,
    solve_hidden_family,
)

__all__ = [
    "GridShape",
    "Point",
    "clamp_to_box",
    "iterate_points",
    "join",
    "leq",
    "meet",
    "HiddenPointInstance",
    "HiddenPointOracle",
    "TableInstance",
    "TableOracle",
    "eval_hidden_point",
    "lift_clamp",
    "make_counting",
    "restrict_box",
    "SOLVERS",
    "SolveOutcome",
    "dnc_fixed_point",
    "kleene_from_bottom",
    "kleene_from_top",
    "solve_hidden_family",
]

__version__ = "0.1.0"
