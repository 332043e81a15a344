"""Filtered simplicial complexes: weight propagation, clique expansion, and
Vietoris-Rips over the shortest-path metric.

Expansion level k adds cliques with up to k+1 vertices (dimension k); homology
is then read in dimensions 0..k.  For k=1 the complex is the graph itself.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .classic import NodeWeighting, _bfs_distances
from .graph import Graph
from .motifs import EdgeWeighting

log = logging.getLogger(__name__)

Value = Fraction
Edge = tuple[int, int]


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[int, ...]
    value: Value

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class WeightedComplex:
    """Simplices in a fixed total order: (value, dimension, vertex tuple).

    The order is a valid filtration order: every face precedes its cofaces.
    """

    def __init__(self, simplices: list[Simplex], k: int):
        self.k = k
        self.simplices = sorted(simplices, key=lambda s: (s.value, len(s.vertices), s.vertices))
        self.index = {s.vertices: i for i, s in enumerate(self.simplices)}

    def __len__(self) -> int:
        return len(self.simplices)

    def dump_lines(self) -> list[str]:
        """Debug format: one simplex per line, "dim value v0 v1 ..."."""
        return [
            f"{s.dim} {float(s.value)!r} " + " ".join(map(str, s.vertices))
            for s in self.simplices
        ]


def propagate_weights(
    g: Graph, weighting: NodeWeighting | EdgeWeighting
) -> tuple[list[Value], dict[Edge, Value]]:
    """Make a node weighting and an edge weighting total and compatible.

    Edge-based input: every node receives the global minimum edge weight
    (or the weighting's declared node value when it has one; curvatures pin
    nodes at -1).  With no edges at all, nodes fall back to 0.
    Node-based input: each edge receives the max of its endpoint values.
    """
    if isinstance(weighting, EdgeWeighting):
        edge_values = dict(weighting.values)
        missing = set(g.edges) - set(edge_values)
        if missing:
            raise ValueError(f"edge weighting misses {len(missing)} edges")
        if weighting.node_value is not None:
            base = weighting.node_value
        elif edge_values:
            base = min(edge_values.values())
        else:
            base = Fraction(0)
        return [base] * g.n, edge_values
    node_values = [weighting.values[v] for v in range(g.n)]
    edge_values = {(u, v): max(node_values[u], node_values[v]) for u, v in g.edges}
    return node_values, edge_values


def clique_expand(
    g: Graph, node_values: list[Value], edge_values: dict[Edge, Value], k: int
) -> WeightedComplex:
    """All cliques of up to k+1 vertices, each weighted with the maximum
    value over its proper subcliques (equivalently its edges)."""
    if k < 1:
        raise ValueError("expansion level k must be >= 1")
    simplices = [Simplex((v,), node_values[v]) for v in range(g.n)]
    simplices += [Simplex(e, edge_values[e]) for e in g.edges]
    if g.n_edges > 20000:
        log.info("clique expansion on dense graph: %d edges, k=%d", g.n_edges, k)
    # grow cliques vertex by vertex, keeping candidates above the max vertex
    frontier = [(e, g.neighbors(e[0]) & g.neighbors(e[1]), edge_values[e]) for e in g.edges]
    for size in range(3, k + 2):
        nxt = []
        for verts, cands, val in frontier:
            top = verts[-1]
            for w in cands:
                if w <= top:
                    continue
                new_val = val
                for u in verts:
                    ev = edge_values[(u, w)]
                    if ev > new_val:
                        new_val = ev
                new_verts = verts + (w,)
                simplices.append(Simplex(new_verts, new_val))
                if size < k + 1:
                    nxt.append((new_verts, cands & g.neighbors(w), new_val))
        frontier = nxt
        if not frontier:
            break
    return WeightedComplex(simplices, k)


def build_complex(g: Graph, weighting: NodeWeighting | EdgeWeighting, k: int) -> WeightedComplex:
    node_values, edge_values = propagate_weights(g, weighting)
    return clique_expand(g, node_values, edge_values, k)


def vietoris_rips(g: Graph, k: int) -> WeightedComplex:
    """Simplices on vertex sets with finite pairwise shortest-path distance,
    valued at the max pairwise distance; built up to dimension k."""
    if k < 1:
        raise ValueError("expansion level k must be >= 1")
    simplices = [Simplex((v,), Fraction(0)) for v in range(g.n)]
    comps = g.components()
    for comp in comps:
        dist = {v: _bfs_distances(g, v) for v in comp}
        for size in range(2, k + 2):
            for verts in combinations(comp, size):
                val = max(dist[a][b] for a, b in combinations(verts, 2))
                simplices.append(Simplex(verts, Fraction(val)))
    return WeightedComplex(simplices, k)
