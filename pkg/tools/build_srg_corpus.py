"""Reconstruct the strongly-regular-graph corpora used by the acceptance suite.

Writes:
  data/srg/sr16622.g6   - both SRG(16,6,2,2) graphs
  data/srg/sr251256.g6  - the 15 SRG(25,12,5,6) graphs

Everything is built from explicit deterministic constructions:

* SRG(16,6,2,2): the 4x4 rook's graph and the Cayley graph on (Z4)^2 with
  connection set {+-(1,0), +-(0,1), +-(1,1)}.
* SRG(25,12,5,6): seeds from three families - the Paley graph on GF(25),
  Latin-square graphs of the two main classes of 5x5 Latin squares, and the
  complements of the block graphs of both Steiner triple systems STS(13)
  (the cyclic system and its Pasch switch), which are SRG(26,10,3,4).
  Each seed is expanded by Seidel-switching descendant closure: a conference
  SRG lies in a regular two-graph whose descendant at every point is again an
  SRG(25,12,5,6).  The four two-graphs on 26 points contribute 1+2+8+4
  descendant classes, which is the complete family of 15.

Membership is certified by the local parameter check, so nothing rests on the
constructions being textbook-perfect; classes are separated by edge-motif
invariants with an explicit isomorphism search as tie-breaker.

Usage: python tools/build_srg_corpus.py
"""

from __future__ import annotations

import sys
from itertools import combinations, permutations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from motifph.graph import Graph, encode_graph6
from motifph.motifs import (count_chordless_pentagons, count_chordless_squares,
                            count_triangles)

DATA_DIR = Path(__file__).parent.parent / "data" / "srg"


# ---------------------------------------------------------------------------
# certified membership check
# ---------------------------------------------------------------------------

def srg_check(g: Graph, n: int, k: int, lam: int, mu: int) -> bool:
    if g.n != n or any(d != k for d in g.degrees()):
        return False
    for u in range(n):
        for v in range(u + 1, n):
            common = len(g.neighbors(u) & g.neighbors(v))
            if common != (lam if g.has_edge(u, v) else mu):
                return False
    return True


# ---------------------------------------------------------------------------
# SRG(16,6,2,2)
# ---------------------------------------------------------------------------

def rook4() -> Graph:
    """4x4 rook's graph: cells adjacent iff same row or column."""
    edges = []
    for i in range(4):
        for j in range(4):
            for jj in range(j + 1, 4):
                edges.append((4 * i + j, 4 * i + jj))
            for ii in range(i + 1, 4):
                edges.append((4 * i + j, 4 * ii + j))
    return Graph(16, edges)


def shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for x in range(4):
        for y in range(4):
            for dx, dy in conn:
                a = 4 * x + y
                b = 4 * ((x + dx) % 4) + ((y + dy) % 4)
                if a < b:
                    edges.append((a, b))
    return Graph(16, edges)


# ---------------------------------------------------------------------------
# SRG(25,12,5,6) seed constructions
# ---------------------------------------------------------------------------

def paley25() -> Graph:
    """Paley graph on GF(25) = GF(5)[x]/(x^2 - 2): u ~ v iff u - v is a square."""
    elements = [(a, b) for a in range(5) for b in range(5)]
    index = {e: i for i, e in enumerate(elements)}

    def mul(p, q):
        a, b = p
        c, d = q
        return ((a * c + 2 * b * d) % 5, (a * d + b * c) % 5)

    squares = {mul(e, e) for e in elements} - {(0, 0)}
    edges = []
    for i, u in enumerate(elements):
        for j in range(i + 1, 25):
            v = elements[j]
            if ((u[0] - v[0]) % 5, (u[1] - v[1]) % 5) in squares:
                edges.append((i, index[v]))
    return Graph(25, edges)


def latin_squares_order5() -> list[tuple]:
    """All 56 reduced 5x5 Latin squares."""
    out: list[tuple] = []
    perms = list(permutations(range(5)))

    def extend(rows):
        r = len(rows)
        if r == 5:
            out.append(tuple(rows))
            return
        for p in perms:
            if p[0] != r:
                continue
            if all(all(p[c] != prev[c] for prev in rows) for c in range(5)):
                extend(rows + [p])

    extend([(0, 1, 2, 3, 4)])
    return out


def latin_square_graph(sq) -> Graph:
    """Cells adjacent iff same row, same column, or same symbol."""
    edges = set()
    cells = [(r, c) for r in range(5) for c in range(5)]
    for i, (r, c) in enumerate(cells):
        for j in range(i + 1, 25):
            r2, c2 = cells[j]
            if r == r2 or c == c2 or sq[r][c] == sq[r2][c2]:
                edges.add((i, j))
    return Graph(25, sorted(edges))


def cyclic_sts13() -> list[tuple[int, ...]]:
    """The cyclic Steiner triple system on 13 points (base blocks {0,1,4},
    {0,2,7} mod 13)."""
    blocks = set()
    for base in ({0, 1, 4}, {0, 2, 7}):
        for s in range(13):
            blocks.add(frozenset((x + s) % 13 for x in base))
    return sorted(tuple(sorted(b)) for b in blocks)


def pasch_configs(blocks) -> list[tuple[int, ...]]:
    """Quadruples of blocks on 6 points with every point in exactly 2 blocks."""
    bs = [frozenset(b) for b in blocks]
    out = []
    for quad in combinations(range(len(bs)), 4):
        pts = set().union(*(bs[q] for q in quad))
        if len(pts) == 6 and all(sum(p in bs[q] for q in quad) == 2 for p in pts):
            out.append(quad)
    return out


def pasch_switch(blocks, quad):
    """Replace a Pasch configuration by the complementary one covering the
    same 12 pairs; yields the other STS(13) isomorphism class."""
    bs = [frozenset(b) for b in blocks]
    chosen = {bs[q] for q in quad}
    pts = sorted(set().union(*chosen))
    pairs_in = {frozenset(p) for b in chosen for p in combinations(b, 2)}
    cands = [frozenset(t) for t in combinations(pts, 3)
             if frozenset(t) not in chosen
             and all(frozenset(p) in pairs_in for p in combinations(t, 2))]
    if len(cands) != 4:
        return None
    if len({frozenset(p) for b in cands for p in combinations(b, 2)}) != 12:
        return None
    kept = [tuple(sorted(b)) for i, b in enumerate(bs) if i not in quad]
    return sorted(kept + [tuple(sorted(c)) for c in cands])


def is_sts13(blocks) -> bool:
    cover = set()
    for b in blocks:
        for p in combinations(b, 2):
            fp = frozenset(p)
            if fp in cover:
                return False
            cover.add(fp)
    return len(cover) == 13 * 12 // 2


def block_graph_complement(blocks) -> Graph:
    """Blocks adjacent iff disjoint; for an STS(13) this is SRG(26,10,3,4)."""
    n = len(blocks)
    bs = [set(b) for b in blocks]
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                     if not (bs[i] & bs[j])])


# ---------------------------------------------------------------------------
# Seidel switching descendants
# ---------------------------------------------------------------------------

def _descendants_of(h: Graph) -> list[Graph]:
    """Descendants of the switching class of h (one per point): switch the
    point isolated, delete it, keep the result when it is SRG(25,12,5,6)."""
    n = h.n
    masks = [0] * n
    for u, v in h.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    full = (1 << n) - 1
    out = []
    for p in range(n):
        s = masks[p]
        switched = [
            masks[u] ^ ((((full ^ s) if (s >> u & 1) else s)) & ~(1 << u))
            for u in range(n)
        ]
        keep = [u for u in range(n) if u != p]
        pos = {u: i for i, u in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u in keep for v in keep
                 if u < v and switched[u] >> v & 1]
        g = Graph(n - 1, edges)
        if srg_check(g, 25, 12, 5, 6):
            out.append(g)
    return out


def descendants(g: Graph) -> list[Graph]:
    if g.n == 25:
        withiso = Graph(26, list(g.edges))  # adjoin an isolated point
        return _descendants_of(withiso)
    return _descendants_of(g)


# ---------------------------------------------------------------------------
# isomorphism classes
# ---------------------------------------------------------------------------

def signature(g: Graph) -> tuple:
    """Isomorphism-invariant key: motif-count multisets plus 4-clique count."""
    t = count_triangles(g)
    s = count_chordless_squares(g)
    p = count_chordless_pentagons(g)
    k4 = 0
    for a, b in g.edges:
        commons = sorted(g.neighbors(a) & g.neighbors(b))
        for x, y in combinations(commons, 2):
            if g.has_edge(x, y):
                k4 += 1
    k4 //= 6
    per_edge = sorted((t[e], s[e], p[e]) for e in g.edges)
    per_node_s = sorted(
        tuple(sorted(s[e] for e in g.edges if v in e)) for v in range(g.n)
    )
    return (tuple(per_edge), tuple(per_node_s), k4)


def find_isomorphism(g1: Graph, g2: Graph, budget: int = 5_000_000) -> list[int] | None:
    """Backtracking isomorphism search; None means no mapping exists."""
    if g1.n != g2.n or sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    n = g1.n
    order = []
    placed: set[int] = set()
    while len(order) < n:
        best, best_score = None, (-1, -1)
        for v in range(n):
            if v in placed:
                continue
            score = (sum(1 for u in g1.adj[v] if u in placed), g1.degree(v))
            if score > best_score:
                best, best_score = v, score
        order.append(best)
        placed.add(best)
    mapping = [-1] * n
    used = [False] * n
    nodes_visited = 0

    def backtrack(idx: int) -> bool:
        nonlocal nodes_visited
        nodes_visited += 1
        if nodes_visited > budget:
            raise TimeoutError("isomorphism search budget exhausted")
        if idx == n:
            return True
        v = order[idx]
        mapped_nbrs = [u for u in g1.adj[v] if mapping[u] >= 0]
        if mapped_nbrs:
            cands = set(g2.adj[mapping[mapped_nbrs[0]]])
            for u in mapped_nbrs[1:]:
                cands &= g2.neighbors(mapping[u])
        else:
            cands = set(range(n))
        mapped_non = [mapping[u] for u in range(n)
                      if mapping[u] >= 0 and not g1.has_edge(u, v)]
        for x in sorted(cands):
            if used[x] or g2.degree(x) != g1.degree(v):
                continue
            if any(g2.has_edge(x, y) for y in mapped_non):
                continue
            mapping[v] = x
            used[x] = True
            if backtrack(idx + 1):
                return True
            mapping[v] = -1
            used[x] = False
        return False

    return mapping if backtrack(0) else None


class ClassCollector:
    def __init__(self):
        self.classes: list[tuple[Graph, tuple]] = []

    def register(self, g: Graph) -> bool:
        sig = signature(g)
        for h, hsig in self.classes:
            if hsig == sig and find_isomorphism(g, h) is not None:
                return False
        self.classes.append((g, sig))
        return True


# ---------------------------------------------------------------------------
# main
# ---------------------------------------------------------------------------

def build_sr16622() -> list[Graph]:
    a, b = rook4(), shrikhande()
    assert srg_check(a, 16, 6, 2, 2) and srg_check(b, 16, 6, 2, 2)
    assert signature(a) != signature(b), "constructions must be non-isomorphic"
    return sorted([a, b], key=signature)


def build_sr251256() -> list[Graph]:
    collector = ClassCollector()

    def absorb(g: Graph, origin: str):
        fresh = sum(collector.register(h) for h in descendants(g))
        print(f"  {origin}: +{fresh} classes (total {len(collector.classes)})")

    sts1 = cyclic_sts13()
    assert is_sts13(sts1)
    g26a = block_graph_complement(sts1)
    assert srg_check(g26a, 26, 10, 3, 4)
    absorb(g26a, "sts13-cyclic block graph")

    sts2 = pasch_switch(sts1, pasch_configs(sts1)[0])
    assert sts2 is not None and is_sts13(sts2)
    g26b = block_graph_complement(sts2)
    assert srg_check(g26b, 26, 10, 3, 4)
    absorb(g26b, "sts13-switched block graph")

    absorb(paley25(), "paley(25)")

    seen_ls_sigs = set()
    for idx, sq in enumerate(latin_squares_order5()):
        g = latin_square_graph(sq)
        sig = signature(g)
        if sig in seen_ls_sigs:
            continue
        seen_ls_sigs.add(sig)
        absorb(g, f"latin-square main class #{len(seen_ls_sigs)}")
        if len(collector.classes) >= 15:
            break

    assert len(collector.classes) == 15, f"expected 15, got {len(collector.classes)}"
    return sorted((g for g, _ in collector.classes), key=signature)


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)

    graphs16 = build_sr16622()
    (DATA_DIR / "sr16622.g6").write_text(
        "\n".join(encode_graph6(g) for g in graphs16) + "\n")
    print(f"sr16622: wrote {len(graphs16)} certified graphs")

    print("sr251256:")
    graphs25 = build_sr251256()
    for g in graphs25:
        assert srg_check(g, 25, 12, 5, 6)
    sigs = [signature(g) for g in graphs25]
    for i, j in combinations(range(len(graphs25)), 2):
        if sigs[i] == sigs[j]:
            assert find_isomorphism(graphs25[i], graphs25[j]) is None
    (DATA_DIR / "sr251256.g6").write_text(
        "\n".join(encode_graph6(g) for g in graphs25) + "\n")
    print(f"sr251256: wrote {len(graphs25)} certified pairwise non-isomorphic graphs")


if __name__ == "__main__":
    main()
