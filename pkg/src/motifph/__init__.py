"""Motif-based and comparison filtrations for persistent homology on graphs."""

__version__ = "0.1.0"

from .graph import Graph, GraphPair, GeneratorSpec, generate, parse_graph6, encode_graph6
from .filtrations import FiltrationSpec, TABLE_ORDER, compute_weighting, diagram, distinguish
from .persistence import PersistenceDiagram, bottleneck, compute_persistence, normalize_diagram

__all__ = [
    "Graph", "GraphPair", "GeneratorSpec", "generate", "parse_graph6", "encode_graph6",
    "FiltrationSpec", "TABLE_ORDER", "compute_weighting", "diagram", "distinguish",
    "PersistenceDiagram", "bottleneck", "compute_persistence", "normalize_diagram",
    "__version__",
]
