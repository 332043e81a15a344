"""Registry of the fifteen filtrations and the graph -> diagram pipeline.

Names follow the table abbreviations used throughout the outputs: edge-based
eT, eS, eP, eSum, eO, eF, eR, eH, eA, eB; node-based nD, nC, nE, nG; and the
metric-based mV (Vietoris-Rips over shortest paths, which has no weighting).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import classic, motifs
from .classic import NodeWeighting
from .complexes import WeightedComplex, build_complex, vietoris_rips
from .graph import Graph
from .motifs import EdgeWeighting
from .persistence import PersistenceDiagram, Verdict, compare_diagrams, compute_persistence


@dataclass(frozen=True)
class FiltrationSpec:
    """A filtration name plus its parameters."""

    name: str
    alpha: Fraction = Fraction(0)          # eO smoothing
    orbit_set: str = "literal"             # nG: "literal" (0..10) or "nonredundant"

    def __post_init__(self):
        if self.name not in FILTRATIONS:
            raise ValueError(f"unknown filtration {self.name!r}")
        if self.orbit_set not in ("literal", "nonredundant"):
            raise ValueError(f"unknown orbit set {self.orbit_set!r}")


_EDGE_FNS: dict[str, Callable[[Graph], EdgeWeighting]] = {
    "eT": motifs.density_triangles,
    "eS": motifs.density_squares,
    "eP": motifs.density_pentagons,
    "eSum": motifs.density_sum,
    "eF": classic.forman_augmented,
    "eR": classic.randic,
    "eH": classic.harmonic,
    "eA": classic.repulsion_attraction,
    "eB": classic.edge_betweenness,
}

_NODE_FNS: dict[str, Callable[[Graph], NodeWeighting]] = {
    "nD": classic.degree_filtration,
    "nC": classic.clustering_coefficient,
    "nE": classic.egonet_persistence,
}

#: Column order used by the success-rate tables.
TABLE_ORDER = ("nD", "eO", "eF", "mV", "eT", "eS", "eP", "eSum",
               "eR", "eH", "eA", "eB", "nC", "nE", "nG")

FILTRATIONS = frozenset(TABLE_ORDER)
EDGE_FILTRATIONS = frozenset(_EDGE_FNS) | {"eO"}
NODE_FILTRATIONS = frozenset(_NODE_FNS) | {"nG"}


def compute_weighting(g: Graph, spec: FiltrationSpec) -> EdgeWeighting | NodeWeighting:
    """Weighting values for every filtration except mV (which has none)."""
    if spec.name == "mV":
        raise ValueError("the Vietoris-Rips filtration has no node/edge weighting")
    if spec.name == "eO":
        return classic.ollivier_ricci(g, spec.alpha)
    if spec.name == "nG":
        orbits = classic.LITERAL_ORBITS if spec.orbit_set == "literal" \
            else classic.NONREDUNDANT_ORBITS
        return classic.graphlet_score(g, orbits)
    if spec.name in _EDGE_FNS:
        return _EDGE_FNS[spec.name](g)
    return _NODE_FNS[spec.name](g)


def filtration_complex(g: Graph, spec: FiltrationSpec, k: int,
                       weighting: EdgeWeighting | NodeWeighting | None = None) -> WeightedComplex:
    if spec.name == "mV":
        return vietoris_rips(g, k)
    if weighting is None:
        weighting = compute_weighting(g, spec)
    return build_complex(g, weighting, k)


def diagram(g: Graph, spec: FiltrationSpec, k: int,
            weighting: EdgeWeighting | NodeWeighting | None = None) -> PersistenceDiagram:
    return compute_persistence(filtration_complex(g, spec, k, weighting))


def distinguish(g1: Graph, g2: Graph, spec: FiltrationSpec, k: int) -> Verdict:
    """Bottleneck gate: "distinct" iff some dimension's distance exceeds 1e-8."""
    if g1.n == 0 or g2.n == 0:
        raise ValueError("distinguish requires nonempty graphs")
    return compare_diagrams(diagram(g1, spec, k), diagram(g2, spec, k), k)
