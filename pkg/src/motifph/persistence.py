"""Sublevel-set persistent homology and diagram comparison.

Boundary-matrix reduction is done over GF(2) with columns held as Python
integer bitmasks.  Filtration values stay exact rationals end to end, so the
1e-8 isomorphism threshold is never exposed to floating-point roundoff; the
bottleneck distance is likewise computed exactly (binary search over the
finite candidate set with a max-flow feasibility test on the
multiplicity-compressed diagrams).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .complexes import WeightedComplex

Value = Fraction
INF = math.inf

ISO_THRESHOLD = Fraction(1, 10**8)


@dataclass(frozen=True)
class DiagramPoint:
    birth: Value
    death: Optional[Value]  # None = essential (infinite death)
    dim: int

    @property
    def essential(self) -> bool:
        return self.death is None

    @property
    def persistence(self) -> Value | float:
        return INF if self.death is None else self.death - self.birth


@dataclass
class PersistenceDiagram:
    points: list[DiagramPoint] = field(default_factory=list)

    def in_dim(self, dim: int) -> list[DiagramPoint]:
        return [p for p in self.points if p.dim == dim]

    def finite(self) -> list[DiagramPoint]:
        return [p for p in self.points if p.death is not None]

    def max_dim(self) -> int:
        return max((p.dim for p in self.points), default=-1)

    def scaled(self, factor: Value) -> "PersistenceDiagram":
        return PersistenceDiagram([
            DiagramPoint(p.birth * factor, None if p.death is None else p.death * factor, p.dim)
            for p in self.points
        ])


def compute_persistence(c: WeightedComplex) -> PersistenceDiagram:
    """Standard reduction of the GF(2) boundary matrix in filtration order.

    Zero-persistence pairs are kept in the diagram (callers filter them for
    matching and images); essential classes get infinite death.
    """
    n = len(c.simplices)
    columns: list[int] = [0] * n
    for j, s in enumerate(c.simplices):
        if s.dim == 0:
            continue
        col = 0
        for face in combinations(s.vertices, len(s.vertices) - 1):
            col |= 1 << c.index[face]
        columns[j] = col
    pivot_of_row: dict[int, int] = {}
    points: list[DiagramPoint] = []
    paired = [False] * n
    for j in range(n):
        col = columns[j]
        while col:
            low = col.bit_length() - 1
            other = pivot_of_row.get(low)
            if other is None:
                break
            col ^= columns[other]
        columns[j] = col
        if col:
            low = col.bit_length() - 1
            pivot_of_row[low] = j
            paired[low] = True
            paired[j] = True
            birth_s = c.simplices[low]
            death_s = c.simplices[j]
            points.append(DiagramPoint(birth_s.value, death_s.value, birth_s.dim))
    for i in range(n):
        if not paired[i]:
            s = c.simplices[i]
            points.append(DiagramPoint(s.value, None, s.dim))
    points.sort(key=lambda p: (p.dim, p.birth, p.death is None, p.death or 0))
    return PersistenceDiagram(points)


# ---------------------------------------------------------------------------
# bottleneck distance
# ---------------------------------------------------------------------------

def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram, dim: int) -> Value | float:
    """Exact bottleneck distance between the dimension-`dim` points.

    Diagonal augmentation under the supremum norm for finite points; essential
    points are matched only against essential points, by birth difference.
    Unequal essential counts give +inf.  Zero-persistence points are ignored.
    """
    p1 = d1.in_dim(dim)
    p2 = d2.in_dim(dim)
    e1 = sorted(p.birth for p in p1 if p.essential)
    e2 = sorted(p.birth for p in p2 if p.essential)
    if len(e1) != len(e2):
        return INF
    ess = max((abs(a - b) for a, b in zip(e1, e2)), default=Fraction(0))
    f1 = [(p.birth, p.death) for p in p1 if not p.essential and p.birth != p.death]
    f2 = [(p.birth, p.death) for p in p2 if not p.essential and p.birth != p.death]
    fin = _bottleneck_finite(f1, f2)
    return max(ess, fin)


def _compress(points: list[tuple[Value, Value]]) -> tuple[list[tuple[Value, Value]], list[int]]:
    mult: dict[tuple[Value, Value], int] = {}
    for p in points:
        mult[p] = mult.get(p, 0) + 1
    uniq = sorted(mult)
    return uniq, [mult[p] for p in uniq]


def _bottleneck_finite(f1: list[tuple[Value, Value]], f2: list[tuple[Value, Value]]) -> Value:
    if sorted(f1) == sorted(f2):
        return Fraction(0)
    pts1, cnt1 = _compress(f1)
    pts2, cnt2 = _compress(f2)
    diag1 = [(d - b) / 2 for b, d in pts1]
    diag2 = [(d - b) / 2 for b, d in pts2]
    cross = [
        [max(abs(b1 - b2), abs(dd1 - dd2)) for (b2, dd2) in pts2]
        for (b1, dd1) in pts1
    ]
    candidates = set(diag1) | set(diag2)
    upper = max(candidates, default=Fraction(0))
    for row in cross:
        for v in row:
            if v <= upper:
                candidates.add(v)
    cand = sorted(candidates)
    lo, hi = 0, len(cand) - 1
    # cand[hi] (= upper bound: everything to the diagonal) is always feasible
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(cand[mid], pts1, cnt1, pts2, cnt2, diag1, diag2, cross):
            hi = mid
        else:
            lo = mid + 1
    return cand[lo]


def _feasible(d, pts1, cnt1, pts2, cnt2, diag1, diag2, cross) -> bool:
    """Perfect-matching feasibility at distance d on the augmented diagrams.

    Left side: distinct D1 points (with multiplicities) plus one diagonal
    node of capacity |D2|; right side mirrors it.  Feasible iff max flow
    saturates |D1| + |D2|.
    """
    n1, n2 = len(pts1), len(pts2)
    tot1, tot2 = sum(cnt1), sum(cnt2)
    # node ids: 0..n1-1 left points, n1 = left diagonal, n1+1..n1+n2 right
    # points, n1+1+n2 = right diagonal, then source and sink
    src = n1 + 1 + n2 + 1
    snk = src + 1
    big = tot1 + tot2
    arcs: dict[int, list[int]] = {u: [] for u in range(snk + 1)}
    capacity: dict[tuple[int, int], int] = {}

    def arc(u, v, c):
        if c <= 0:
            return
        if (u, v) not in capacity:
            capacity[(u, v)] = 0
            capacity.setdefault((v, u), 0)
            arcs[u].append(v)
            arcs[v].append(u)
        capacity[(u, v)] += c

    for i in range(n1):
        arc(src, i, cnt1[i])
    arc(src, n1, tot2)
    for j in range(n2):
        arc(n1 + 1 + j, snk, cnt2[j])
    arc(n1 + 1 + n2, snk, tot1)
    for i in range(n1):
        row = cross[i]
        for j in range(n2):
            if row[j] <= d:
                arc(i, n1 + 1 + j, big)
        if diag1[i] <= d:
            arc(i, n1 + 1 + n2, big)
    for j in range(n2):
        if diag2[j] <= d:
            arc(n1, n1 + 1 + j, big)
    arc(n1, n1 + 1 + n2, big)
    # Dinic
    need = tot1 + tot2
    flow = 0
    while True:
        level = {src: 0}
        queue = [src]
        for u in queue:
            for v in arcs[u]:
                if v not in level and capacity.get((u, v), 0) > 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if snk not in level:
            break
        it = {u: 0 for u in arcs}

        def dfs(u, pushed):
            if u == snk:
                return pushed
            while it[u] < len(arcs[u]):
                v = arcs[u][it[u]]
                if capacity.get((u, v), 0) > 0 and level.get(v, -1) == level[u] + 1:
                    got = dfs(v, min(pushed, capacity[(u, v)]))
                    if got:
                        capacity[(u, v)] -= got
                        capacity[(v, u)] = capacity.get((v, u), 0) + got
                        return got
                it[u] += 1
            return 0

        while True:
            pushed = dfs(src, need - flow)
            if not pushed:
                break
            flow += pushed
        if flow == need:
            return True
    return flow == need


# ---------------------------------------------------------------------------
# normalization and verdicts
# ---------------------------------------------------------------------------

def normalize_diagram(d: PersistenceDiagram) -> tuple[PersistenceDiagram, bool]:
    """Divide all values by the maximum finite absolute filtration value.

    Returns (diagram, normalized flag); all-zero / empty diagrams come back
    unchanged with the flag False.
    """
    mx = Fraction(0)
    for p in d.points:
        mx = max(mx, abs(p.birth))
        if p.death is not None:
            mx = max(mx, abs(p.death))
    if mx == 0:
        return d, False
    return d.scaled(Fraction(1) / mx), True


@dataclass(frozen=True)
class Verdict:
    distinct: bool
    max_dim: int
    distance: float  # float('inf') allowed
    per_dim: tuple[float, ...]


def _as_float(v: Value | float) -> float:
    return float(v)


def diagram_distance(d1: PersistenceDiagram, d2: PersistenceDiagram,
                     dims: range) -> tuple[int, Value | float, list[Value | float]]:
    per_dim = [bottleneck(d1, d2, dim) for dim in dims]
    best = max(range(len(per_dim)), key=lambda i: per_dim[i])
    return dims[best], per_dim[best], per_dim


def compare_diagrams(d1: PersistenceDiagram, d2: PersistenceDiagram, k: int) -> Verdict:
    """Per-dimension bottleneck gate at the 1e-8 threshold over dims 0..k."""
    dims = range(0, k + 1)
    max_dim, dist, per_dim = diagram_distance(d1, d2, dims)
    distinct = (dist == INF) or dist > ISO_THRESHOLD
    return Verdict(
        distinct=distinct,
        max_dim=max_dim,
        distance=_as_float(dist),
        per_dim=tuple(_as_float(v) for v in per_dim),
    )


# ---------------------------------------------------------------------------
# persistence images
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImageParams:
    resolution: tuple[int, int] = (20, 20)
    birth_range: tuple[float, float] = (0.0, 1.0)
    pers_range: tuple[float, float] = (0.0, 1.0)
    bandwidth: float | None = None  # default: half the grid cell diagonal
    weight: str = "linear"  # "linear" (in persistence) or "constant"

    def resolved_bandwidth(self) -> float:
        if self.bandwidth is not None:
            if self.bandwidth <= 0:
                raise ValueError("bandwidth must be positive")
            return self.bandwidth
        rows, cols = self.resolution
        dx = (self.birth_range[1] - self.birth_range[0]) / cols
        dy = (self.pers_range[1] - self.pers_range[0]) / rows
        return 0.5 * math.hypot(dx, dy)


@dataclass
class PersistenceImage:
    params: ImageParams
    dim: int
    pixels: list[float]  # row-major, rows indexed by persistence axis


def image_csv_lines(img: "PersistenceImage") -> list[str]:
    """Image file format: one metadata header, then row-major pixel rows."""
    p = img.params
    lines = [
        "rows,cols,bandwidth,weight,birth_min,birth_max,pers_min,pers_max,dim",
        ",".join(map(repr, [p.resolution[0], p.resolution[1], p.resolved_bandwidth()]))
        + f",{p.weight},"
        + ",".join(map(repr, [p.birth_range[0], p.birth_range[1],
                              p.pers_range[0], p.pers_range[1]]))
        + f",{img.dim}",
    ]
    rows, cols = p.resolution
    for r in range(rows):
        lines.append(",".join(repr(x) for x in img.pixels[r * cols:(r + 1) * cols]))
    return lines


def persistence_image(points: list[tuple[float, float]], params: ImageParams,
                      dim: int = 0) -> PersistenceImage:
    """Gaussian persistence image on the birth-persistence plane.

    ``points`` are finite (birth, death) pairs; callers replace essential
    deaths beforehand.  Each point contributes a Gaussian integrated exactly
    over every grid cell (erf products), weighted by its persistence (or 1
    under constant weighting).  Zero-persistence points contribute nothing
    under linear weighting and are skipped.
    """
    rows, cols = params.resolution
    sigma = params.resolved_bandwidth()
    b0, b1 = params.birth_range
    p0, p1 = params.pers_range
    dx = (b1 - b0) / cols
    dy = (p1 - p0) / rows
    pixels = [0.0] * (rows * cols)
    inv = 1.0 / (sigma * math.sqrt(2.0))
    for birth, death in points:
        if math.isinf(death):
            raise ValueError("persistence_image requires finite deaths")
        pers = death - birth
        w = pers if params.weight == "linear" else 1.0
        if w == 0.0:
            continue
        cdf_x = [0.5 * (1.0 + math.erf((b0 + c * dx - birth) * inv)) for c in range(cols + 1)]
        cdf_y = [0.5 * (1.0 + math.erf((p0 + r * dy - pers) * inv)) for r in range(rows + 1)]
        for r in range(rows):
            wy = cdf_y[r + 1] - cdf_y[r]
            if wy == 0.0:
                continue
            base = r * cols
            for c in range(cols):
                pixels[base + c] += w * wy * (cdf_x[c + 1] - cdf_x[c])
    return PersistenceImage(params=params, dim=dim, pixels=pixels)
