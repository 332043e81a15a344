"""Comparison filtrations: degree, curvatures, connectivity indices,
betweenness, clustering, egonet persistence, and graphlet scores.

All weightings are exact rationals and permutation-equivariant.  The square
root in the Randic index is the one irrational case; it is replaced by a
deterministic 30-digit rational approximation of 1/sqrt(d_i*d_j) (integer
square root), which preserves the equality pattern across edges exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .graph import Graph
from .motifs import EdgeWeighting
from .transport import min_cost_transport


@dataclass
class NodeWeighting:
    """Map from node id to an exact rational weight."""

    values: dict[int, Fraction]


def degree_filtration(g: Graph) -> NodeWeighting:
    return NodeWeighting({v: Fraction(g.degree(v)) for v in range(g.n)})


# ---------------------------------------------------------------------------
# curvature weightings
# ---------------------------------------------------------------------------

def _bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def lazy_walk_distribution(g: Graph, center: int, alpha: Fraction) -> dict[int, Fraction]:
    """Lazy random walk measure: alpha at the center, (1-alpha)/deg on neighbors."""
    d = g.degree(center)
    mass: dict[int, Fraction] = {}
    if alpha > 0 or d == 0:
        mass[center] = alpha if d > 0 else Fraction(1)
    if d > 0:
        share = (1 - alpha) / d
        for w in g.adj[center]:
            mass[w] = mass.get(w, Fraction(0)) + share
    return mass


def ollivier_ricci(g: Graph, alpha: Fraction = Fraction(0)) -> EdgeWeighting:
    """kappa(u,v) = 1 - W1(mu_u, mu_v) with shortest-path ground metric.

    The Wasserstein distance is solved exactly as a small transportation
    problem.  Nodes carry weight -1 (below every curvature value).
    """
    values = {}
    dist_cache: dict[int, list[int]] = {}
    for u, v in g.edges:
        mu = lazy_walk_distribution(g, u, alpha)
        nu = lazy_walk_distribution(g, v, alpha)
        left = sorted(mu)
        right = sorted(nu)
        cost = []
        for x in left:
            if x not in dist_cache:
                dist_cache[x] = _bfs_distances(g, x)
            dx = dist_cache[x]
            row = [dx[y] for y in right]
            if any(c < 0 for c in row):
                raise ValueError(f"supports of edge ({u},{v}) span components")
            cost.append(row)
        w1 = min_cost_transport([mu[x] for x in left], [nu[y] for y in right], cost)
        values[(u, v)] = 1 - w1
    return EdgeWeighting(values, node_value=Fraction(-1))


def forman_augmented(g: Graph) -> EdgeWeighting:
    """4 - deg(u) - deg(v) + 3|N(u) & N(v)|; nodes at -1."""
    values = {
        (u, v): Fraction(4 - g.degree(u) - g.degree(v) + 3 * len(g.neighbors(u) & g.neighbors(v)))
        for u, v in g.edges
    }
    return EdgeWeighting(values, node_value=Fraction(-1))


# ---------------------------------------------------------------------------
# degree-based connectivity indices
# ---------------------------------------------------------------------------

_SQRT_DIGITS = 10 ** 30


def _inv_sqrt(m: int) -> Fraction:
    # 30-significant-digit rational stand-in for 1/sqrt(m); injective and
    # order-reversing in m, so edge weight equalities mirror d_i*d_j exactly.
    return Fraction(_SQRT_DIGITS, isqrt(m * _SQRT_DIGITS * _SQRT_DIGITS))


def randic(g: Graph) -> EdgeWeighting:
    return EdgeWeighting({(u, v): _inv_sqrt(g.degree(u) * g.degree(v)) for u, v in g.edges})


def harmonic(g: Graph) -> EdgeWeighting:
    return EdgeWeighting({(u, v): Fraction(2, g.degree(u) + g.degree(v)) for u, v in g.edges})


def repulsion_attraction(g: Graph) -> EdgeWeighting:
    values = {}
    for u, v in g.edges:
        du, dv = g.degree(u), g.degree(v)
        common = len(g.neighbors(u) & g.neighbors(v))
        values[(u, v)] = Fraction(du + dv + du * dv, 1 + common)
    return EdgeWeighting(values)


# ---------------------------------------------------------------------------
# betweenness
# ---------------------------------------------------------------------------

def edge_betweenness(g: Graph) -> EdgeWeighting:
    """Sum over unordered node pairs of the fraction of shortest paths
    through each edge (Brandes accumulation, exact rationals)."""
    acc = {e: Fraction(0) for e in g.edges}
    for s in range(g.n):
        dist = [-1] * g.n
        sigma = [0] * g.n
        preds: list[list[int]] = [[] for _ in range(g.n)]
        dist[s] = 0
        sigma[s] = 1
        order = []
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        delta = [Fraction(0)] * g.n
        for w in reversed(order):
            for u in preds[w]:
                share = Fraction(sigma[u], sigma[w]) * (1 + delta[w])
                delta[u] += share
                e = (u, w) if u < w else (w, u)
                acc[e] += share
    # each unordered pair {s,t} was visited from both endpoints
    return EdgeWeighting({e: val / 2 for e, val in acc.items()})


# ---------------------------------------------------------------------------
# clustering and egonets
# ---------------------------------------------------------------------------

def clustering_coefficient(g: Graph) -> NodeWeighting:
    """C(v) = 2 T(v) / (d_v (d_v - 1)); 0 when d_v <= 1."""
    values = {}
    for v in range(g.n):
        d = g.degree(v)
        if d <= 1:
            values[v] = Fraction(0)
            continue
        t = sum(len(g.neighbors(v) & g.neighbors(u)) for u in g.adj[v]) // 2
        values[v] = Fraction(2 * t, d * (d - 1))
    return NodeWeighting(values)


def egonet_persistence(g: Graph) -> NodeWeighting:
    """Fraction of egonet degree that stays internal to the egonet.

    For the egonet on {i} | N(i): sum of internal degrees over the sum of all
    degrees of egonet members.  Isolated nodes get 0.
    """
    values = {}
    for i in range(g.n):
        if g.degree(i) == 0:
            values[i] = Fraction(0)
            continue
        ego = g.neighbors(i) | {i}
        internal = 0
        total = 0
        for j in ego:
            dj = g.degree(j)
            inside = sum(1 for w in g.adj[j] if w in ego)
            internal += inside
            total += dj
        values[i] = Fraction(internal, total)
    return NodeWeighting(values)


# ---------------------------------------------------------------------------
# graphlet orbits
# ---------------------------------------------------------------------------

# Orbits of the connected 2-4 node graphlets, in the standard enumeration:
#   edge: 0 | path-3: 1 (end), 2 (center) | triangle: 3
#   path-4: 4 (end), 5 (middle) | claw: 6 (leaf), 7 (hub) | 4-cycle: 8
#   paw: 9 (tail), 10 (cycle rim), 11 (hub) | diamond: 12 (tip), 13 (center)
#   4-clique: 14
N_ORBITS = 15

LITERAL_ORBITS = tuple(range(11))
# Non-redundant subset used by graphlet correlation distances.
NONREDUNDANT_ORBITS = (0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11)


def orbit_counts(g: Graph) -> list[list[int]]:
    """Per-node counts for orbits 0..14 via connected induced subgraph
    enumeration (ESU) on 4-node subsets plus closed forms for 2-3 nodes."""
    counts = [[0] * N_ORBITS for _ in range(g.n)]
    tri_at = [0] * g.n
    for v in range(g.n):
        counts[v][0] = g.degree(v)
        t = sum(len(g.neighbors(v) & g.neighbors(u)) for u in g.adj[v]) // 2
        tri_at[v] = t
        d = g.degree(v)
        counts[v][3] = t
        counts[v][2] = d * (d - 1) // 2 - t
        counts[v][1] = sum(g.degree(u) - 1 for u in g.adj[v]) - 2 * t
    for quad in _connected_quads(g):
        _classify_quad(g, quad, counts)
    return counts


def _connected_quads(g: Graph):
    """Each connected induced 4-node subset exactly once (ESU enumeration).

    At every level only exclusive neighbors (adjacent to none of the current
    subgraph) extend the candidate pool, so pools stay duplicate-free.
    """
    for v in range(g.n):
        ext0 = [u for u in g.adj[v] if u > v]
        for a_idx, a in enumerate(ext0):
            ext1 = ext0[a_idx + 1:] + [
                w for w in g.adj[a] if w > v and not g.has_edge(v, w)
            ]
            for b_idx, b in enumerate(ext1):
                for c in ext1[b_idx + 1:]:
                    yield (v, a, b, c)
                for c in g.adj[b]:
                    if c > v and c != a and not g.has_edge(v, c) and not g.has_edge(a, c):
                        yield (v, a, b, c)


def _classify_quad(g: Graph, quad: tuple[int, int, int, int], counts: list[list[int]]) -> None:
    deg_in = [0, 0, 0, 0]
    m = 0
    for x in range(4):
        for y in range(x + 1, 4):
            if g.has_edge(quad[x], quad[y]):
                deg_in[x] += 1
                deg_in[y] += 1
                m += 1
    if m == 3:
        if max(deg_in) == 3:  # claw
            for x in range(4):
                counts[quad[x]][7 if deg_in[x] == 3 else 6] += 1
        else:  # path
            for x in range(4):
                counts[quad[x]][5 if deg_in[x] == 2 else 4] += 1
    elif m == 4:
        if max(deg_in) == 3:  # paw
            for x in range(4):
                counts[quad[x]][9 + deg_in[x] - 1] += 1
        else:  # 4-cycle
            for x in range(4):
                counts[quad[x]][8] += 1
    elif m == 5:  # diamond
        for x in range(4):
            counts[quad[x]][12 if deg_in[x] == 2 else 13] += 1
    elif m == 6:  # 4-clique
        for x in range(4):
            counts[quad[x]][14] += 1


def graphlet_score(g: Graph, orbits: tuple[int, ...] = LITERAL_ORBITS) -> NodeWeighting:
    """Per-node sum of orbit counts over the chosen orbit index set."""
    counts = orbit_counts(g)
    return NodeWeighting({v: Fraction(sum(counts[v][i] for i in orbits)) for v in range(g.n)})
