"""Graph data model, graph6/edge-list ingestion, and random-graph generators.

Graphs are simple, undirected, with node ids 0..n-1.  Instances are immutable
after construction and safe to share across worker processes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .rng import Rng


class GraphFormatError(ValueError):
    """Malformed graph input (graph6 record, edge list, or manifest)."""


class Graph:
    """Simple undirected graph with contiguous node ids and sorted adjacency."""

    __slots__ = ("n", "edges", "adj", "_adj_sets", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("node count must be nonnegative")
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            seen.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self._adj_sets = tuple(frozenset(a) for a in self.adj)
        masks = []
        for a in self.adj:
            m = 0
            for w in a:
                m |= 1 << w
            masks.append(m)
        self._masks = tuple(masks)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj_sets[v]

    def mask(self, v: int) -> int:
        """Neighborhood of v as a bitmask over node ids."""
        return self._masks[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with node i renamed to perm[i]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class GraphPair:
    left: Graph
    right: Graph
    label: Optional[str] = None  # "isomorphic" | "non-isomorphic" | None

    def __post_init__(self):
        if self.left.n == 0 or self.right.n == 0:
            raise ValueError("pair graphs must be nonempty")
        if self.label not in (None, "isomorphic", "non-isomorphic", "unknown"):
            raise ValueError(f"bad pair label {self.label!r}")


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

_G6_HEADER = b">>graph6<<"


def _g6_size(data: bytes, offset: int) -> tuple[int, int]:
    """Decode the graph6 size field, returning (n, bytes consumed)."""
    if not data:
        raise GraphFormatError(f"byte {offset}: empty graph6 record")
    c = data[0]
    if c == 126:
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise GraphFormatError(f"byte {offset}: truncated 36-bit size field")
            n = 0
            for b in data[2:8]:
                n = (n << 6) | (b - 63)
            return n, 8
        if len(data) < 4:
            raise GraphFormatError(f"byte {offset}: truncated 18-bit size field")
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        if n < 63:
            raise GraphFormatError(f"byte {offset}: non-canonical size field for n={n}")
        return n, 4
    if not (63 <= c <= 125):
        raise GraphFormatError(f"byte {offset}: size byte {c} out of range 63..126")
    return c - 63, 1


def parse_graph6(line: bytes | str) -> Graph:
    """Parse one graph6 record into a :class:`Graph`.

    Accepts an optional ``>>graph6<<`` header.  Upper-triangle adjacency bits
    are read in column-major order x(0,1), x(0,2), x(1,2), x(0,3), ...
    """
    data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    data = data.strip()
    offset = 0
    if data.startswith(_G6_HEADER):
        data = data[len(_G6_HEADER):]
        offset = len(_G6_HEADER)
    n, used = _g6_size(data, offset)
    body = data[used:]
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) != nbytes:
        raise GraphFormatError(
            f"byte {offset + used}: expected {nbytes} adjacency bytes for n={n}, got {len(body)}"
        )
    bits = 0
    for i, b in enumerate(body):
        if not (63 <= b <= 126):
            raise GraphFormatError(f"byte {offset + used + i}: character {b} out of range 63..126")
        bits = (bits << 6) | (b - 63)
    pad = 6 * nbytes - nbits
    if pad and bits & ((1 << pad) - 1):
        raise GraphFormatError(f"byte {offset + used + nbytes - 1}: nonzero trailing padding bits")
    bits >>= pad
    edges = []
    pos = nbits - 1  # bit index from the most significant end
    for col in range(1, n):
        for row in range(col):
            if bits >> pos & 1:
                edges.append((row, col))
            pos -= 1
    return Graph(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 record (no header)."""
    n = g.n
    if n <= 62:
        size = bytes([n + 63])
    elif n <= 258047:
        size = bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    else:
        size = bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    nbits = n * (n - 1) // 2
    bits = 0
    pos = nbits - 1
    for col in range(1, n):
        for row in range(col):
            if g.has_edge(row, col):
                bits |= 1 << pos
            pos -= 1
    nbytes = (nbits + 5) // 6
    bits <<= 6 * nbytes - nbits
    body = bytes(((bits >> (6 * (nbytes - 1 - i))) & 63) + 63 for i in range(nbytes))
    return (size + body).decode("ascii")


def load_graph6_file(path: str | Path) -> list[Graph]:
    """All graph6 records in a file, one per line; blank lines skipped."""
    graphs = []
    raw = Path(path).read_bytes()
    for ln, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(b">>") and not line.startswith(_G6_HEADER):
            raise GraphFormatError(f"{path}:{ln}: unsupported format header {line[:12]!r}")
        if line.startswith(b":") or line.startswith(b";"):
            raise GraphFormatError(f"{path}:{ln}: sparse6 records are not supported")
        if line.startswith(b"&"):
            raise GraphFormatError(f"{path}:{ln}: digraph6 records are not supported")
        try:
            graphs.append(parse_graph6(line))
        except GraphFormatError as e:
            raise GraphFormatError(f"{path}:{ln}: {e}") from None
    return graphs


# ---------------------------------------------------------------------------
# edge lists
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Whitespace-separated integer pairs; '#' starts a comment line.

    Node count is max id + 1, overridable with a header line "n <count>".
    Duplicate pairs (either orientation) collapse to one edge.
    """
    edges = []
    n_override = None
    max_id = -1
    for ln, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if tokens[0] == "n" and len(tokens) == 2:
            n_override = int(tokens[1])
            continue
        if len(tokens) != 2:
            raise GraphFormatError(f"line {ln}: expected two node ids, got {stripped!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {ln}: non-integer token in {stripped!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {ln}: negative node id in {stripped!r}")
        if u == v:
            raise GraphFormatError(f"line {ln}: self-loop at node {u}")
        edges.append((u, v))
        max_id = max(max_id, u, v)
    n = n_override if n_override is not None else max_id + 1
    return Graph(n, edges)


def load_graph_file(path: str | Path) -> list[Graph]:
    """Load .g6/.graph6 as graph6 records, anything else as one edge list."""
    p = Path(path)
    if p.suffix in (".g6", ".graph6"):
        return load_graph6_file(p)
    return [parse_edge_list(p.read_text())]


# ---------------------------------------------------------------------------
# pair manifests
# ---------------------------------------------------------------------------

def load_pair_manifest(path: str | Path) -> list[GraphPair]:
    """JSON pair manifest: an array of {left_path_or_index,
    right_path_or_index, label?} records ("left"/"right" accepted as short
    keys), or {"graphs": path, "pairs": [...]} with integer indices into the
    shared pool.  Paths are resolved relative to the manifest."""
    p = Path(path)
    doc = json.loads(p.read_text())
    base = p.parent
    pool: list[Graph] | None = None
    if isinstance(doc, dict):
        pool = load_graph_file(base / doc["graphs"])
        records = doc["pairs"]
    else:
        records = doc
    pairs = []
    for rec in records:
        if isinstance(rec, list):
            rec = {"left": rec[0], "right": rec[1], "label": rec[2] if len(rec) > 2 else None}
        out = []
        for side in ("left", "right"):
            ref = rec.get(side, rec.get(f"{side}_path_or_index"))
            if ref is None:
                raise GraphFormatError(f"{path}: pair record misses {side!r}")
            if isinstance(ref, int):
                if pool is None:
                    raise GraphFormatError(f"{path}: index {ref} used without a 'graphs' pool")
                out.append(pool[ref])
            else:
                gs = load_graph_file(base / ref)
                idx = rec.get(f"{side}_index", 0)
                out.append(gs[idx])
        pairs.append(GraphPair(out[0], out[1], rec.get("label")))
    return pairs


# ---------------------------------------------------------------------------
# random-graph generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """One of the ER / BA / WS random-graph models, fully seeded."""

    model: str
    n: int
    p: float = 0.0      # ER connection probability
    m: int = 0          # BA attachment count
    beta: float = 0.0   # WS rewiring probability
    s: int = 0          # WS ring-lattice neighborhood size (even)
    seed: int = 0

    def __post_init__(self):
        if self.model not in ("ER", "BA", "WS"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.model == "ER" and not 0.0 <= self.p <= 1.0:
            raise ValueError("ER requires 0 <= p <= 1")
        if self.model == "BA" and not 1 <= self.m < self.n:
            raise ValueError("BA requires 1 <= m < n")
        if self.model == "WS":
            if not 0.0 <= self.beta <= 1.0:
                raise ValueError("WS requires 0 <= beta <= 1")
            if self.s % 2 != 0 or not 0 <= self.s < self.n:
                raise ValueError("WS requires even s < n")

    @staticmethod
    def from_dict(d: dict) -> "GeneratorSpec":
        known = {"model", "n", "p", "m", "beta", "s", "seed"}
        bad = set(d) - known
        if bad:
            raise ValueError(f"unknown generator fields {sorted(bad)}")
        return GeneratorSpec(**d)


def generate(spec: GeneratorSpec) -> Graph:
    """Sample a graph; a pure function of the spec (including its seed)."""
    rng = Rng(spec.seed)
    if spec.model == "ER":
        edges = [
            (u, v)
            for u in range(spec.n)
            for v in range(u + 1, spec.n)
            if rng.uniform() < spec.p
        ]
        return Graph(spec.n, edges)
    if spec.model == "BA":
        return _generate_ba(spec.n, spec.m, rng)
    return _generate_ws(spec.n, spec.s, spec.beta, rng)


def _generate_ba(n: int, m: int, rng: Rng) -> Graph:
    # m isolated seed nodes; each newcomer attaches m edges preferentially.
    # Selection weight is degree+1 while total degree is zero (first newcomer),
    # plain degree afterwards.
    deg = [0] * n
    edges = []
    for v in range(m, n):
        total = sum(deg[:v])
        smooth = total == 0
        targets: set[int] = set()
        while len(targets) < m:
            weights = [(deg[u] + 1 if smooth else deg[u]) for u in range(v)]
            for u in targets:
                weights[u] = 0
            wsum = sum(weights)
            if wsum == 0:
                # remaining candidates all have zero weight; fall back to uniform
                pool = [u for u in range(v) if u not in targets]
                targets.add(pool[rng.below(len(pool))])
                continue
            r = rng.below(wsum)
            acc = 0
            for u in range(v):
                acc += weights[u]
                if r < acc:
                    targets.add(u)
                    break
        for u in sorted(targets):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def _generate_ws(n: int, s: int, beta: float, rng: Rng) -> Graph:
    half = s // 2
    present = set()
    for u in range(n):
        for off in range(1, half + 1):
            v = (u + off) % n
            present.add((u, v) if u < v else (v, u))
    # Rewire each lattice edge (u, u+off) with probability beta, keeping u.
    for u in range(n):
        for off in range(1, half + 1):
            v = (u + off) % n
            e = (u, v) if u < v else (v, u)
            if e not in present:
                continue
            if rng.uniform() < beta:
                for _ in range(100):
                    w = rng.below(n)
                    if w == u:
                        continue
                    cand = (u, w) if u < w else (w, u)
                    if cand in present:
                        continue
                    present.discard(e)
                    present.add(cand)
                    break
    return Graph(n, sorted(present))


# ---------------------------------------------------------------------------
# perturbations
# ---------------------------------------------------------------------------

@dataclass
class PerturbationTrack:
    """Graph after each perturbation step; graphs[0] is the input graph."""

    graphs: list[Graph] = field(default_factory=list)
    noop_steps: list[int] = field(default_factory=list)


_REWIRE_RETRIES = 100


def perturb_rewire(g: Graph, steps: int, seed: int) -> PerturbationTrack:
    """Degree-preserving double-edge swaps, one per step.

    Each step draws two disjoint edges (a,b), (c,d) uniformly (endpoint roles
    randomized) and replaces them with (a,d), (c,b) when that creates no
    self-loop or duplicate.  After 100 failed draws the step is a no-op and is
    recorded in ``noop_steps``.
    """
    if steps > 0 and g.n_edges < 2:
        raise ValueError("rewiring needs at least 2 edges")
    rng = Rng(seed)
    track = PerturbationTrack(graphs=[g])
    edges = set(g.edges)
    for step in range(steps):
        elist = sorted(edges)
        done = False
        for _ in range(_REWIRE_RETRIES):
            i = rng.below(len(elist))
            j = rng.below(len(elist))
            if i == j:
                continue
            a, b = elist[i]
            c, d = elist[j]
            if rng.below(2):
                a, b = b, a
            if rng.below(2):
                c, d = d, c
            if len({a, b, c, d}) < 4:
                continue
            e1 = (a, d) if a < d else (d, a)
            e2 = (c, b) if c < b else (b, c)
            if e1 in edges or e2 in edges:
                continue
            edges.discard((min(a, b), max(a, b)))
            edges.discard((min(c, d), max(c, d)))
            edges.add(e1)
            edges.add(e2)
            done = True
            break
        if not done:
            track.noop_steps.append(step)
        track.graphs.append(Graph(g.n, sorted(edges)))
    return track


def perturb_remove(g: Graph, steps: int, seed: int) -> PerturbationTrack:
    """Remove one uniformly chosen remaining edge per step."""
    if steps > g.n_edges:
        raise ValueError(f"cannot remove {steps} edges from a graph with {g.n_edges}")
    rng = Rng(seed)
    track = PerturbationTrack(graphs=[g])
    edges = sorted(g.edges)
    for _ in range(steps):
        idx = rng.below(len(edges))
        edges.pop(idx)
        track.graphs.append(Graph(g.n, edges))
    return track
