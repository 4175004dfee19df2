"""Pursuit-evasion on generalized Petersen graphs and I-graphs.

The package computes exact cop numbers by retrograde analysis of the full
game state space and plays the constructive cop strategies (two-squad
window pushes, four-cop capture, isometric-tree guarding, five-cop
I-graph play) as verifiable, trace-emitting controllers.
"""

from .errors import (
    BudgetError,
    ParameterError,
    ParseError,
    PreconditionError,
    WindowExhausted,
)
from .graphs import (
    BoundReport,
    GpParams,
    Graph,
    IGraphParams,
    Subgraph,
    build_gp,
    build_igraph,
    distances,
    girth,
    induced_subgraph,
    is_connected,
    is_connected_igraph,
    is_isometric_subgraph,
    is_tree,
    lower_bounds,
)

__all__ = [
    "BoundReport",
    "BudgetError",
    "GpParams",
    "Graph",
    "IGraphParams",
    "ParameterError",
    "ParseError",
    "PreconditionError",
    "Subgraph",
    "WindowExhausted",
    "build_gp",
    "build_igraph",
    "distances",
    "girth",
    "induced_subgraph",
    "is_connected",
    "is_connected_igraph",
    "is_isometric_subgraph",
    "is_tree",
    "lower_bounds",
]

__version__ = "0.1.0"
