"""Experiment drivers: isomorphism success-rate sweeps, perturbation
sensitivity, the ego-distance baseline, and persistence-image feature export.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import classic
from .classic import _bfs_distances
from .filtrations import FiltrationSpec, diagram
from .graph import (GeneratorSpec, Graph, generate, load_graph_file,
                    perturb_remove, perturb_rewire)
from .persistence import (ISO_THRESHOLD, ImageParams, PersistenceDiagram, Verdict,
                          _bottleneck_finite, compare_diagrams, normalize_diagram,
                          persistence_image)
from .rng import Rng


class SoundnessError(RuntimeError):
    """A pair labeled isomorphic was reported distinct: equivariance is broken."""


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------

@dataclass
class ExperimentManifest:
    """Declarative description of a dataset sweep."""

    graphs: list[Graph]
    pairs: list[tuple[int, int, Optional[str]]]  # indices into graphs + label
    filtrations: list[FiltrationSpec]
    k_levels: list[int]
    seed: int = 1
    skipped: list[tuple[str, int]] = field(default_factory=list)

    def __post_init__(self):
        if any(k < 1 for k in self.k_levels):
            raise ValueError("expansion levels must be >= 1")
        # Vietoris-Rips is not run at k = 4 (combinatorial blowup); the combo
        # is dropped from sweeps and recorded.
        self.skipped = [("mV", k) for k in self.k_levels
                        if k >= 4 and any(f.name == "mV" for f in self.filtrations)]

    def jobs(self) -> list[tuple[FiltrationSpec, int]]:
        out = []
        for spec in self.filtrations:
            for k in self.k_levels:
                if spec.name == "mV" and k >= 4:
                    continue
                out.append((spec, k))
        return out


def manifest_from_files(paths: Sequence[str | Path],
                        pair_list: Optional[Iterable] = None,
                        filtrations: Sequence[str | FiltrationSpec] = ("eSum",),
                        k_levels: Sequence[int] = (1,),
                        seed: int = 1) -> ExperimentManifest:
    """Build a manifest from graph files.

    Without an explicit pair list, all within-family pairs are used and
    labeled non-isomorphic (family datasets enumerate isomorphism classes).
    """
    graphs: list[Graph] = []
    for p in paths:
        graphs.extend(load_graph_file(p))
    if pair_list is None:
        pairs = [(i, j, "non-isomorphic")
                 for i in range(len(graphs)) for j in range(i + 1, len(graphs))]
    else:
        pairs = []
        for rec in pair_list:
            if isinstance(rec, dict):
                pairs.append((rec["left"], rec["right"], rec.get("label")))
            else:
                pairs.append((rec[0], rec[1], rec[2] if len(rec) > 2 else None))
    specs = [f if isinstance(f, FiltrationSpec) else FiltrationSpec(f) for f in filtrations]
    return ExperimentManifest(graphs, pairs, specs, list(k_levels), seed)


def manifest_from_pairs(pairs, filtrations: Sequence[str | FiltrationSpec],
                        k_levels: Sequence[int], seed: int = 1) -> ExperimentManifest:
    """Manifest from explicit :class:`GraphPair` records (pair-manifest files)."""
    graphs: list[Graph] = []
    index_pairs = []
    for pair in pairs:
        graphs.append(pair.left)
        graphs.append(pair.right)
        index_pairs.append((len(graphs) - 2, len(graphs) - 1, pair.label))
    specs = [f if isinstance(f, FiltrationSpec) else FiltrationSpec(f) for f in filtrations]
    return ExperimentManifest(graphs, index_pairs, specs, list(k_levels), seed)


# ---------------------------------------------------------------------------
# isomorphism gate
# ---------------------------------------------------------------------------

@dataclass
class PairResult:
    pair: tuple[int, int]
    label: Optional[str]
    filtration: str
    k: int
    verdict: Verdict


@dataclass
class IsoGateResult:
    detail: list[PairResult]
    rates: dict[tuple[str, int], float]  # (filtration, k) -> success rate
    skipped: list[tuple[str, int]]


def _diagram_job(args) -> PersistenceDiagram:
    g, spec, k = args
    return diagram(g, spec, k)


def iso_gate(manifest: ExperimentManifest, jobs: int = 1,
             progress=None) -> IsoGateResult:
    """Success rate of the bottleneck gate for each (filtration, k).

    The rate counts pairs not labeled isomorphic; a pair labeled isomorphic
    that gets distinguished aborts the run (equivariance violation).
    """
    from .parallel import pmap

    detail: list[PairResult] = []
    rates: dict[tuple[str, int], float] = {}
    for spec, k in manifest.jobs():
        needed = sorted({idx for i, j, _ in manifest.pairs for idx in (i, j)})
        diagrams_list = pmap(_diagram_job,
                             [(manifest.graphs[i], spec, k) for i in needed], jobs)
        diagrams = dict(zip(needed, diagrams_list))
        distinct_count = 0
        counted = 0
        for i, j, label in manifest.pairs:
            verdict = compare_diagrams(diagrams[i], diagrams[j], k)
            detail.append(PairResult((i, j), label, spec.name, k, verdict))
            if label == "isomorphic":
                if verdict.distinct:
                    raise SoundnessError(
                        f"pair ({i},{j}) labeled isomorphic but {spec.name}@k={k} "
                        f"reports distinct (distance {verdict.distance})"
                    )
                continue
            counted += 1
            distinct_count += verdict.distinct
        rates[(spec.name, k)] = distinct_count / counted if counted else 0.0
        if progress:
            progress(f"{spec.name} k={k}: {rates[(spec.name, k)]:.2f}")
    return IsoGateResult(detail, rates, manifest.skipped)


# ---------------------------------------------------------------------------
# sensitivity
# ---------------------------------------------------------------------------

def _dim0_diagram(g: Graph, spec: FiltrationSpec) -> PersistenceDiagram:
    return diagram(g, spec, 1)


def sensitivity_distance(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Normalized dim-0 bottleneck over finite points.

    Each diagram is scaled by its own maximum finite absolute value; essential
    classes are dropped so that component-count changes under perturbation
    keep the distance finite (matching how the trajectories are reported).
    """
    n1, _ = normalize_diagram(d1)
    n2, _ = normalize_diagram(d2)
    f1 = [(p.birth, p.death) for p in n1.in_dim(0)
          if p.death is not None and p.death != p.birth]
    f2 = [(p.birth, p.death) for p in n2.in_dim(0)
          if p.death is not None and p.death != p.birth]
    return float(_bottleneck_finite(f1, f2))


@dataclass
class SensitivityResult:
    model: GeneratorSpec
    perturbation: str
    steps: int
    runs: int
    filtrations: list[str]
    # trajectories[filtration][step] over runs
    distances: dict[str, list[list[float]]]

    def mean(self, filtration: str) -> list[float]:
        return [sum(col) / len(col) for col in zip(*self.distances[filtration])]

    def sd(self, filtration: str) -> list[float]:
        out = []
        for col in zip(*self.distances[filtration]):
            m = sum(col) / len(col)
            out.append(math.sqrt(sum((x - m) ** 2 for x in col) / len(col)))
        return out


def _sensitivity_run_one(args) -> dict[str, list[float]]:
    spec, perturbation, steps, specs, run_seed = args
    g = generate(replace(spec, seed=run_seed))
    perturb_seed = Rng(run_seed).spawn(1).seed
    if perturbation == "rewire":
        track = perturb_rewire(g, steps, perturb_seed)
    else:
        track = perturb_remove(g, min(steps, g.n_edges), perturb_seed)
    out: dict[str, list[float]] = {}
    for fspec in specs:
        base = _dim0_diagram(g, fspec)
        traj = [sensitivity_distance(base, _dim0_diagram(h, fspec))
                for h in track.graphs]
        while len(traj) < steps + 1:   # removal exhausted the edge set
            traj.append(traj[-1])
        out[fspec.name] = traj
    return out


def sensitivity_run(spec: GeneratorSpec, perturbation: str,
                    steps: int = 50, runs: int = 50,
                    filtrations: Sequence[str | FiltrationSpec] = ("eSum", "nD"),
                    jobs: int = 1) -> SensitivityResult:
    """Mean/sd trajectory of the normalized dim-0 bottleneck distance to the
    unperturbed baseline; run r uses seed spec.seed + r."""
    from .parallel import pmap

    if perturbation not in ("rewire", "remove"):
        raise ValueError(f"unknown perturbation {perturbation!r}")
    specs = [f if isinstance(f, FiltrationSpec) else FiltrationSpec(f) for f in filtrations]
    args = [(spec, perturbation, steps, specs, spec.seed + r) for r in range(runs)]
    per_run = pmap(_sensitivity_run_one, args, jobs)
    distances = {f.name: [run[f.name] for run in per_run] for f in specs}
    return SensitivityResult(spec, perturbation, steps, runs,
                             [f.name for f in specs], distances)


# ---------------------------------------------------------------------------
# ego-distance baseline
# ---------------------------------------------------------------------------

@dataclass
class EgoHistogram:
    r: int
    cap: Fraction
    step: Fraction
    counts: np.ndarray      # r x r x r int64
    cumulative: np.ndarray  # r x r x r float64, normalized by node count


def ego_histogram(g: Graph, cap: Fraction = Fraction(1, 2),
                  step: Fraction = Fraction(1, 100)) -> EgoHistogram:
    """Joint 3D histogram of (normalized degree, clustering, egonet
    persistence) with capped, exact-rational binning."""
    r_frac = cap / step
    if r_frac.denominator != 1:
        raise ValueError("cap must be an integer multiple of step")
    r = int(r_frac)
    clustering = classic.clustering_coefficient(g).values
    egos = classic.egonet_persistence(g).values
    counts = np.zeros((r, r, r), dtype=np.int64)

    def bin_of(val: Fraction) -> int:
        if val >= cap:
            return r - 1
        return int(val / step)  # exact floor on rationals

    for v in range(g.n):
        nd = Fraction(g.degree(v), g.n - 1) if g.n > 1 else Fraction(0)
        counts[bin_of(nd), bin_of(clustering[v]), bin_of(egos[v])] += 1
    cum = counts.astype(np.float64)
    for axis in range(3):
        cum = np.cumsum(cum, axis=axis)
    cum /= g.n
    return EgoHistogram(r, cap, step, counts, cum)


def ego_distance(g1: Graph, g2: Graph, cap: Fraction = Fraction(1, 2),
                 step: Fraction = Fraction(1, 100)) -> float:
    """l2 norm between the cumulative ego-feature histograms of two graphs."""
    if g1.n == 0 or g2.n == 0:
        raise ValueError("ego distance requires nonempty graphs")
    h1 = ego_histogram(g1, cap, step)
    h2 = ego_histogram(g2, cap, step)
    diff = h1.cumulative - h2.cumulative
    return float(np.sqrt((diff * diff).sum()))


def ego_verdict(g1: Graph, g2: Graph, cap: Fraction = Fraction(1, 2),
                step: Fraction = Fraction(1, 100)) -> tuple[bool, float]:
    d = ego_distance(g1, g2, cap, step)
    return d > float(ISO_THRESHOLD), d


# ---------------------------------------------------------------------------
# graph properties (prediction targets)
# ---------------------------------------------------------------------------

GIRTH_SENTINEL = -1.0

PROPERTY_NAMES = (
    "avg_closeness", "avg_degree", "avg_clustering", "degree_heterogeneity",
    "avg_betweenness", "min_degree", "max_degree", "avg_shortest_path",
    "max_radius", "max_diameter", "girth",
)


def _node_betweenness(g: Graph) -> list[Fraction]:
    acc = [Fraction(0)] * g.n
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
                delta[u] += Fraction(sigma[u], sigma[w]) * (1 + delta[w])
            if w != s:
                acc[w] += delta[w]
    # unordered pairs, normalized by (n-1)(n-2)/2
    norm = Fraction((g.n - 1) * (g.n - 2), 2)
    if norm == 0:
        return [Fraction(0)] * g.n
    return [a / 2 / norm for a in acc]


def girth(g: Graph) -> float:
    """Length of the shortest cycle; GIRTH_SENTINEL if the graph is acyclic."""
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            if 2 * dist[u] >= best:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w and parent[w] != u:
                    best = min(best, dist[u] + dist[w] + 1)
    return GIRTH_SENTINEL if best is math.inf else float(best)


def graph_properties(g: Graph) -> dict[str, float]:
    degs = g.degrees()
    n = g.n
    props: dict[str, float] = {}
    props["avg_degree"] = sum(degs) / n if n else 0.0
    props["min_degree"] = float(min(degs)) if degs else 0.0
    props["max_degree"] = float(max(degs)) if degs else 0.0
    mean_d = sum(degs) / n if n else 0.0
    props["degree_heterogeneity"] = (
        (sum(d * d for d in degs) / n) / (mean_d * mean_d) if mean_d > 0 else 0.0
    )
    props["avg_clustering"] = (
        sum(map(float, classic.clustering_coefficient(g).values.values())) / n if n else 0.0
    )
    props["avg_betweenness"] = (
        sum(map(float, _node_betweenness(g))) / n if n else 0.0
    )
    closeness_sum = 0.0
    sp_sum = 0
    sp_pairs = 0
    max_radius = 0
    max_diameter = 0
    for comp in g.components():
        ecc = {}
        for v in comp:
            dist = _bfs_distances(g, v)
            reach = [dist[u] for u in comp]
            total = sum(reach)
            r = len(comp)
            if total > 0 and n > 1:
                closeness_sum += ((r - 1) / total) * ((r - 1) / (n - 1))
            sp_sum += total
            sp_pairs += r - 1
            ecc[v] = max(reach)
        if comp:
            max_radius = max(max_radius, min(ecc.values()))
            max_diameter = max(max_diameter, max(ecc.values()))
    props["avg_closeness"] = closeness_sum / n if n else 0.0
    props["avg_shortest_path"] = sp_sum / sp_pairs if sp_pairs else 0.0
    props["max_radius"] = float(max_radius)
    props["max_diameter"] = float(max_diameter)
    props["girth"] = girth(g)
    return props


# ---------------------------------------------------------------------------
# feature export
# ---------------------------------------------------------------------------

@dataclass
class FeatureExport:
    filtration: str
    k: int
    params: ImageParams
    essential_value: float
    header: list[str]
    rows: list[list[float]]  # graph id first
    property_names: tuple[str, ...] = PROPERTY_NAMES


def _export_diagram_job(args):
    g, spec, k = args
    return diagram(g, spec, k), graph_properties(g)


def export_features(graphs: Sequence[Graph], filtration: str | FiltrationSpec, k: int,
                    resolution: tuple[int, int] = (20, 20),
                    bandwidth: float | None = None,
                    weight: str = "linear",
                    jobs: int = 1) -> FeatureExport:
    """One row per graph: persistence-image vectors for dims 0..k plus the
    eleven prediction targets.

    The image grid spans the corpus-wide birth/persistence range; essential
    deaths are replaced by 1.05x the corpus maximum finite value.
    """
    from .parallel import pmap

    spec = filtration if isinstance(filtration, FiltrationSpec) else FiltrationSpec(filtration)
    computed = pmap(_export_diagram_job, [(g, spec, k) for g in graphs], jobs)
    max_finite = 0.0
    for d, _ in computed:
        for p in d.points:
            max_finite = max(max_finite, abs(float(p.birth)))
            if p.death is not None:
                max_finite = max(max_finite, abs(float(p.death)))
    essential_value = (max_finite if max_finite > 0 else 1.0) * 1.05
    per_graph_points: list[dict[int, list[tuple[float, float]]]] = []
    births: list[float] = []
    pers: list[float] = []
    for d, _ in computed:
        by_dim: dict[int, list[tuple[float, float]]] = {dim: [] for dim in range(k + 1)}
        for p in d.points:
            if p.dim > k:
                continue
            b = float(p.birth)
            dd = essential_value if p.death is None else float(p.death)
            if dd == b:
                continue
            by_dim[p.dim].append((b, dd))
            births.append(b)
            pers.append(dd - b)
        per_graph_points.append(by_dim)
    birth_range = _padded_range(births)
    pers_range = _padded_range(pers)
    params = ImageParams(resolution=resolution, birth_range=birth_range,
                         pers_range=pers_range, bandwidth=bandwidth, weight=weight)
    rows = []
    for gid, (by_dim, (d, props)) in enumerate(zip(per_graph_points, computed)):
        row: list[float] = [float(gid)]
        for dim in range(k + 1):
            img = persistence_image(by_dim[dim], params, dim)
            row.extend(img.pixels)
        row.extend(props[name] for name in PROPERTY_NAMES)
        rows.append(row)
    npix = resolution[0] * resolution[1]
    header = ["graph_id"]
    for dim in range(k + 1):
        header.extend(f"img{dim}_{i}" for i in range(npix))
    header.extend(f"prop_{name}" for name in PROPERTY_NAMES)
    return FeatureExport(spec.name, k, params, essential_value, header, rows)


def _padded_range(values: list[float]) -> tuple[float, float]:
    if not values:
        return (0.0, 1.0)
    lo, hi = min(values), max(values)
    if lo == hi:
        return (lo - 0.5, hi + 0.5)
    return (lo, hi)
