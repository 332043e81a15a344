"""Exact solver for small transportation problems.

Masses are rationals; the solver rescales them to integers (common
denominator) and runs a successive-shortest-path min-cost flow, so the
optimal cost is exact.  Problem sizes here are tiny (supports are graph
neighborhoods), which keeps the dense formulation cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class _McmfGraph:
    """Min-cost max-flow on integer capacities/costs (successive shortest paths)."""

    def __init__(self, n_nodes: int):
        self.n = n_nodes
        self.head: list[list[int]] = [[] for _ in range(n_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add_edge(self, u: int, v: int, cap: int, cost: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)

    def min_cost_flow(self, s: int, t: int) -> tuple[int, int]:
        """Push max flow from s to t; returns (flow, cost)."""
        flow = 0
        total_cost = 0
        INF = float("inf")
        while True:
            # Bellman-Ford (queue-based); residual costs can be negative
            dist = [INF] * self.n
            in_queue = [False] * self.n
            prev_edge = [-1] * self.n
            dist[s] = 0
            queue = [s]
            in_queue[s] = True
            while queue:
                u = queue.pop(0)
                in_queue[u] = False
                du = dist[u]
                for eid in self.head[u]:
                    if self.cap[eid] <= 0:
                        continue
                    v = self.to[eid]
                    nd = du + self.cost[eid]
                    if nd < dist[v]:
                        dist[v] = nd
                        prev_edge[v] = eid
                        if not in_queue[v]:
                            queue.append(v)
                            in_queue[v] = True
            if dist[t] is INF:
                return flow, total_cost
            push = None
            v = t
            while v != s:
                eid = prev_edge[v]
                push = self.cap[eid] if push is None else min(push, self.cap[eid])
                v = self.to[eid ^ 1]
            v = t
            while v != s:
                eid = prev_edge[v]
                self.cap[eid] -= push
                self.cap[eid ^ 1] += push
                v = self.to[eid ^ 1]
            flow += push
            total_cost += push * dist[t]


def min_cost_transport(supply: list[Fraction], demand: list[Fraction],
                       cost: list[list[int]]) -> Fraction:
    """Minimum cost to move ``supply`` onto ``demand`` under integer costs.

    Total supply must equal total demand (both sum to 1 for probability
    measures).  Returns the exact optimal transport cost.
    """
    if sum(supply) != sum(demand):
        raise ValueError("unbalanced transportation problem")
    scale = lcm(*[f.denominator for f in supply + demand])
    a = [int(f * scale) for f in supply]
    b = [int(f * scale) for f in demand]
    n, m = len(a), len(b)
    net = _McmfGraph(n + m + 2)
    s, t = n + m, n + m + 1
    for i in range(n):
        if a[i] > 0:
            net.add_edge(s, i, a[i], 0)
    for j in range(m):
        if b[j] > 0:
            net.add_edge(n + j, t, b[j], 0)
    for i in range(n):
        if a[i] > 0:
            for j in range(m):
                if b[j] > 0:
                    net.add_edge(i, n + j, a[i], cost[i][j])
    flow, total_cost = net.min_cost_flow(s, t)
    if flow != sum(a):
        raise RuntimeError("transportation problem did not saturate supply")
    return Fraction(total_cost, scale)
