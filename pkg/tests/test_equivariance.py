"""Every weighting commutes with node relabeling, exactly.

Checked with 50 random permutations per named graph for all fourteen
node/edge weightings (the metric-based mV has no weighting; its invariance is
covered through diagrams in the soundness sweep).
"""

from motifph.classic import NodeWeighting
from motifph.filtrations import FiltrationSpec, TABLE_ORDER, compute_weighting
from motifph.parallel import pmap
from motifph.rng import Rng

from conftest import complete, cycle, path, petersen, star

NAMED = {
    "K3": complete(3), "K4": complete(4), "K5": complete(5),
    "C4": cycle(4), "C5": cycle(5), "C6": cycle(6),
    "P3": path(3), "P4": path(4), "star3": star(3), "petersen": petersen(),
}

WEIGHTINGS = [name for name in TABLE_ORDER if name != "mV"]


def _check_graph(graph_name: str) -> list[str]:
    g = NAMED[graph_name]
    rng = Rng(hash(graph_name) & 0xFFFF)
    base = {w: compute_weighting(g, FiltrationSpec(w)) for w in WEIGHTINGS}
    failures = []
    for trial in range(50):
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        for w in WEIGHTINGS:
            moved = compute_weighting(h, FiltrationSpec(w))
            ref = base[w]
            if isinstance(ref, NodeWeighting):
                ok = all(moved.values[perm[v]] == ref.values[v] for v in range(g.n))
            else:
                ok = True
                for (u, v), val in ref.values.items():
                    pu, pv = perm[u], perm[v]
                    e = (pu, pv) if pu < pv else (pv, pu)
                    if moved.values[e] != val:
                        ok = False
                        break
            if not ok:
                failures.append(f"{graph_name}/{w}/trial{trial}")
    return failures


def test_all_weightings_equivariant_50_permutations():
    failures = pmap(_check_graph, sorted(NAMED), jobs=2)
    flat = [f for fs in failures for f in fs]
    assert not flat, flat[:5]
