"""Chordless-cycle counting and the four motif edge weightings.

Per edge (i,j) we count triangles, chordless squares, and chordless
pentagons through the edge, then normalize each count by a degree-determined
upper bound:

* triangles:  t_ij / (min(d_i, d_j) - 1)
* squares:    s_ij / ((d_i - 1 - t_ij) * (d_j - 1 - t_ij))
* pentagons:  p_ij / sum over pairs (u, v) with u in N(i)\\{j}, v in N(j)\\{i},
              u != v, of min(d_u - 1, d_v - 1)

A cycle is chordless when its nodes induce no edges besides the cycle's own.
Densities are defined as 0 whenever the bound is <= 0 (this covers degree-1
endpoints), computed as exact rationals, and clamped to [0, 1]; clamp events
are counted in the returned weighting for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph


@dataclass
class EdgeWeighting:
    """Map from canonical edge (u < v) to an exact rational weight.

    ``node_value`` overrides the default node-propagation rule (used by the
    curvature weightings, which pin nodes at -1).
    """

    values: dict[tuple[int, int], Fraction]
    node_value: Fraction | None = None
    clamp_events: int = 0


@dataclass
class CycleCounts:
    triangles: dict[tuple[int, int], int] = field(default_factory=dict)
    squares: dict[tuple[int, int], int] = field(default_factory=dict)
    pentagons: dict[tuple[int, int], int] = field(default_factory=dict)


def count_triangles(g: Graph) -> dict[tuple[int, int], int]:
    """t_ij = |N(i) & N(j)| for every edge."""
    return {(i, j): len(g.neighbors(i) & g.neighbors(j)) for i, j in g.edges}


def count_chordless_squares(g: Graph) -> dict[tuple[int, int], int]:
    """Chordless 4-cycles i-u-v-j-i through each edge (i,j).

    u is the neighbor of i, v the neighbor of j; chordlessness means
    (i,v) and (j,u) are non-edges.
    """
    out = {}
    for i, j in g.edges:
        ni, nj = g.neighbors(i), g.neighbors(j)
        count = 0
        for u in g.adj[i]:
            if u == j or u in nj:
                continue
            for v in g.adj[u]:
                if v == i or v == j:
                    continue
                if v in nj and v not in ni:
                    count += 1
        out[(i, j)] = count
    return out


def count_chordless_pentagons(g: Graph) -> dict[tuple[int, int], int]:
    """Chordless 5-cycles i-u-w-v-j-i through each edge (i,j)."""
    out = {}
    for i, j in g.edges:
        ni, nj = g.neighbors(i), g.neighbors(j)
        count = 0
        for u in g.adj[i]:
            if u == j or u in nj:
                continue
            nu = g.neighbors(u)
            for v in g.adj[j]:
                if v == i or v == u or v in ni or v in nu:
                    continue
                for w in nu & g.neighbors(v):
                    if w != i and w != j and w not in ni and w not in nj:
                        count += 1
        out[(i, j)] = count
    return out


def count_cycles(g: Graph) -> CycleCounts:
    return CycleCounts(
        triangles=count_triangles(g),
        squares=count_chordless_squares(g),
        pentagons=count_chordless_pentagons(g),
    )


def _ratio(num: int, den: int, w: EdgeWeighting) -> Fraction:
    if den <= 0:
        return Fraction(0)
    r = Fraction(num, den)
    if r > 1:
        w.clamp_events += 1
        return Fraction(1)
    return r


def density_triangles(g: Graph, counts: CycleCounts | None = None) -> EdgeWeighting:
    t = counts.triangles if counts else count_triangles(g)
    w = EdgeWeighting({})
    for (i, j), tij in t.items():
        w.values[(i, j)] = _ratio(tij, min(g.degree(i), g.degree(j)) - 1, w)
    return w


def density_squares(g: Graph, counts: CycleCounts | None = None) -> EdgeWeighting:
    counts = counts or CycleCounts(triangles=count_triangles(g), squares=count_chordless_squares(g))
    w = EdgeWeighting({})
    for (i, j), sij in counts.squares.items():
        tij = counts.triangles[(i, j)]
        bound = (g.degree(i) - 1 - tij) * (g.degree(j) - 1 - tij)
        w.values[(i, j)] = _ratio(sij, bound, w)
    return w


def _pentagon_bound(g: Graph, i: int, j: int) -> int:
    bound = 0
    for u in g.adj[i]:
        if u == j:
            continue
        du = g.degree(u) - 1
        for v in g.adj[j]:
            if v == i or v == u:
                continue
            bound += min(du, g.degree(v) - 1)
    return bound


def density_pentagons(g: Graph, counts: CycleCounts | None = None) -> EdgeWeighting:
    p = counts.pentagons if counts else count_chordless_pentagons(g)
    w = EdgeWeighting({})
    for (i, j), pij in p.items():
        w.values[(i, j)] = _ratio(pij, _pentagon_bound(g, i, j), w)
    return w


def density_sum(g: Graph, counts: CycleCounts | None = None) -> EdgeWeighting:
    """Sum of the three cycle densities; values in [0, 3]."""
    counts = counts or count_cycles(g)
    wt = density_triangles(g, counts)
    ws = density_squares(g, counts)
    wp = density_pentagons(g, counts)
    values = {e: wt.values[e] + ws.values[e] + wp.values[e] for e in wt.values}
    return EdgeWeighting(values, clamp_events=wt.clamp_events + ws.clamp_events + wp.clamp_events)
