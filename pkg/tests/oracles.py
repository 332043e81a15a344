"""Independent brute-force oracles used to validate the fast implementations.

Everything here favors obviousness over speed: exhaustive subset enumeration,
explicit path listings, naive matching search.  None of it shares code with
the package paths it checks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from motifph.graph import Graph
from motifph.rng import Rng


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = Rng(seed)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.uniform() < p])


# ---------------------------------------------------------------------------
# chordless cycles by exhaustive subset enumeration
# ---------------------------------------------------------------------------

def _is_chordless_cycle(g: Graph, nodes: tuple[int, ...]) -> list[tuple[int, int]] | None:
    """If the induced subgraph on ``nodes`` is a single chordless cycle,
    return its edges; otherwise None."""
    sub_edges = [(a, b) for a, b in combinations(sorted(nodes), 2) if g.has_edge(a, b)]
    if len(sub_edges) != len(nodes):
        return None
    deg = {v: 0 for v in nodes}
    for a, b in sub_edges:
        deg[a] += 1
        deg[b] += 1
    if any(d != 2 for d in deg.values()):
        return None
    # connectivity of the induced 2-regular graph = a single cycle
    adj = {v: [] for v in nodes}
    for a, b in sub_edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sub_edges if len(seen) == len(nodes) else None


def brute_cycle_counts(g: Graph, size: int) -> dict[tuple[int, int], int]:
    """Per-edge counts of chordless cycles with ``size`` nodes."""
    counts = {e: 0 for e in g.edges}
    for nodes in combinations(range(g.n), size):
        edges = _is_chordless_cycle(g, nodes)
        if edges:
            for e in edges:
                counts[e] += 1
    return counts


def brute_triangles(g: Graph) -> dict[tuple[int, int], int]:
    counts = {e: 0 for e in g.edges}
    for nodes in combinations(range(g.n), 3):
        if all(g.has_edge(a, b) for a, b in combinations(nodes, 2)):
            for e in combinations(nodes, 2):
                counts[e] += 1
    return counts


# ---------------------------------------------------------------------------
# shortest paths / betweenness by explicit path enumeration
# ---------------------------------------------------------------------------

def all_shortest_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    if s == t:
        return [[s]]
    frontier = [[s]]
    while frontier:
        nxt = []
        found = []
        for path in frontier:
            for w in g.adj[path[-1]]:
                if w in path:
                    continue
                if w == t:
                    found.append(path + [w])
                else:
                    nxt.append(path + [w])
        if found:
            shortest = min(len(p) for p in found)
            return [p for p in found if len(p) == shortest]
        frontier = nxt
    return []


def brute_edge_betweenness(g: Graph) -> dict[tuple[int, int], Fraction]:
    acc = {e: Fraction(0) for e in g.edges}
    for s, t in combinations(range(g.n), 2):
        paths = all_shortest_paths(g, s, t)
        if not paths:
            continue
        # keep only genuinely shortest (BFS distance) paths
        dist = len(paths[0]) - 1
        paths = [p for p in paths if len(p) - 1 == dist]
        sigma = len(paths)
        for e in g.edges:
            through = sum(
                1 for p in paths
                if any((min(a, b), max(a, b)) == e for a, b in zip(p, p[1:]))
            )
            acc[e] += Fraction(through, sigma)
    return acc


# ---------------------------------------------------------------------------
# transportation (Wasserstein) via scipy LP
# ---------------------------------------------------------------------------

def lp_transport(supply: list[float], demand: list[float], cost) -> float:
    from scipy.optimize import linprog

    n, m = len(supply), len(demand)
    c = [cost[i][j] for i in range(n) for j in range(m)]
    a_eq = []
    b_eq = []
    for i in range(n):
        row = [0.0] * (n * m)
        for j in range(m):
            row[i * m + j] = 1.0
        a_eq.append(row)
        b_eq.append(supply[i])
    for j in range(m):
        row = [0.0] * (n * m)
        for i in range(n):
            row[i * m + j] = 1.0
        a_eq.append(row)
        b_eq.append(demand[j])
    res = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    assert res.status == 0, res.message
    return res.fun


# ---------------------------------------------------------------------------
# bottleneck by exhaustive matching enumeration
# ---------------------------------------------------------------------------

def brute_bottleneck_finite(f1, f2):
    """Min over all diagonal-augmented matchings of the max sup-norm move."""
    best = None
    n1, n2 = len(f1), len(f2)
    for k in range(0, min(n1, n2) + 1):
        for sub1 in combinations(range(n1), k):
            rest1 = [i for i in range(n1) if i not in sub1]
            for sub2 in combinations(range(n2), k):
                rest2 = [j for j in range(n2) if j not in sub2]
                diag_cost = [
                    (f1[i][1] - f1[i][0]) / 2 for i in rest1
                ] + [
                    (f2[j][1] - f2[j][0]) / 2 for j in rest2
                ]
                base = max(diag_cost, default=Fraction(0))
                for perm in permutations(sub2):
                    cost = base
                    for i, j in zip(sub1, perm):
                        move = max(abs(f1[i][0] - f2[j][0]), abs(f1[i][1] - f2[j][1]))
                        if move > cost:
                            cost = move
                    if best is None or cost < best:
                        best = cost
    return best if best is not None else Fraction(0)


# ---------------------------------------------------------------------------
# homology cross-checks
# ---------------------------------------------------------------------------

def sublevel_components(g: Graph, node_values, edge_values, t) -> int:
    """Connected components of the sublevel graph at threshold t."""
    nodes = [v for v in range(g.n) if node_values[v] <= t]
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v), val in edge_values.items():
        if val <= t and u in parent and v in parent:
            parent[find(u)] = find(v)
    return len({find(v) for v in nodes})


def euler_characteristic_sublevel(complex_, t) -> int:
    chi = 0
    for s in complex_.simplices:
        if s.value <= t:
            chi += -1 if s.dim % 2 else 1
    return chi


def diagram_euler_at(diagram, t) -> int:
    """Alternating sum over dimensions of (#births <= t) - (#deaths <= t)."""
    chi = 0
    for p in diagram.points:
        sign = -1 if p.dim % 2 else 1
        if p.birth <= t:
            chi += sign
        if p.death is not None and p.death <= t:
            chi -= sign
    return chi


def alive_bars(diagram, dim: int, t) -> int:
    n = 0
    for p in diagram.points:
        if p.dim != dim:
            continue
        if p.birth <= t and (p.death is None or p.death > t):
            n += 1
    return n


# ---------------------------------------------------------------------------
# graphlet orbits by exhaustive induced-subgraph classification
# ---------------------------------------------------------------------------

def brute_orbit_counts(g: Graph) -> list[list[int]]:
    counts = [[0] * 15 for _ in range(g.n)]
    for u, v in g.edges:
        counts[u][0] += 1
        counts[v][0] += 1
    for nodes in combinations(range(g.n), 3):
        edges = [(a, b) for a, b in combinations(nodes, 2) if g.has_edge(a, b)]
        deg = {x: sum(x in e for e in edges) for x in nodes}
        if len(edges) == 2:
            for x in nodes:
                counts[x][2 if deg[x] == 2 else 1] += 1
        elif len(edges) == 3:
            for x in nodes:
                counts[x][3] += 1
    for nodes in combinations(range(g.n), 4):
        edges = [(a, b) for a, b in combinations(nodes, 2) if g.has_edge(a, b)]
        deg = {x: sum(x in e for e in edges) for x in nodes}
        degseq = sorted(deg.values())
        m = len(edges)
        if m == 3 and degseq == [1, 1, 1, 3]:
            for x in nodes:
                counts[x][7 if deg[x] == 3 else 6] += 1
        elif m == 3 and degseq == [1, 1, 2, 2]:
            for x in nodes:
                counts[x][5 if deg[x] == 2 else 4] += 1
        elif m == 4 and degseq == [2, 2, 2, 2]:
            for x in nodes:
                counts[x][8] += 1
        elif m == 4 and degseq == [1, 2, 2, 3]:
            for x in nodes:
                counts[x][{1: 9, 2: 10, 3: 11}[deg[x]]] += 1
        elif m == 5:
            for x in nodes:
                counts[x][12 if deg[x] == 2 else 13] += 1
        elif m == 6:
            for x in nodes:
                counts[x][14] += 1
    return counts


# ---------------------------------------------------------------------------
# cliques
# ---------------------------------------------------------------------------

def brute_cliques(g: Graph, max_size: int) -> set[tuple[int, ...]]:
    out = set()
    for size in range(1, max_size + 1):
        for nodes in combinations(range(g.n), size):
            if all(g.has_edge(a, b) for a, b in combinations(nodes, 2)):
                out.add(nodes)
    return out
