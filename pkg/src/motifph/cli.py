"""Command-line surface: weights, ph, iso, sensitivity, egodist, export, gen.

Every command is deterministic given argv + input files + seed (outputs carry
no timestamps).  Exit codes: 0 success, 2 usage/parse error, 3 runtime error;
on runtime errors partially written outputs are removed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classic import NodeWeighting
from .complexes import build_complex, vietoris_rips
from .filtrations import FiltrationSpec, TABLE_ORDER, compute_weighting
from .graph import (GeneratorSpec, GraphFormatError, encode_graph6, generate,
                    load_graph_file, load_pair_manifest)
from .parallel import default_jobs
from .persistence import compute_persistence
from .pipelines import (ego_verdict, export_features, iso_gate,
                        manifest_from_files, manifest_from_pairs, sensitivity_run)


class UsageError(Exception):
    pass


class _Outputs:
    """Tracks files written by a command so failures leave no partial output."""

    def __init__(self, fmt: str = "csv"):
        self.fmt = fmt
        self.paths: list[Path] = []

    def write_table(self, stem: Path, header: list[str], rows: list[list]) -> Path:
        stem.parent.mkdir(parents=True, exist_ok=True)
        if self.fmt == "json":
            path = stem.with_suffix(".json")
            doc = [dict(zip(header, row)) for row in rows]
            path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        else:
            path = stem.with_suffix(".csv")
            with open(path, "w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(header)
                writer.writerows(rows)
        self.paths.append(path)
        return path

    def write_json(self, path: Path, doc) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        self.paths.append(path)
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")

    def write_text(self, path: Path, text: str) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        self.paths.append(path)
        path.write_text(text)

    def cleanup(self) -> None:
        for p in self.paths:
            try:
                p.unlink()
            except OSError:
                pass


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _filtration_list(arg) -> list[str]:
    names = arg if isinstance(arg, list) else [s for s in str(arg).split(",") if s]
    if names == ["all"]:
        return list(TABLE_ORDER)
    for name in names:
        if name not in TABLE_ORDER:
            raise UsageError(f"unknown filtration {name!r} (known: {', '.join(TABLE_ORDER)})")
    return names


def _load_single_graph(path: str):
    graphs = load_graph_file(path)
    if len(graphs) != 1:
        raise UsageError(f"{path} holds {len(graphs)} graphs; expected exactly one")
    return graphs[0]


def _meta(args, manifest_path: Path | None, extra: dict) -> dict:
    doc = {
        "tool_version": __version__,
        "seed": getattr(args, "seed", None),
        "parameters": extra,
    }
    if manifest_path is not None:
        doc["manifest"] = str(manifest_path)
        doc["manifest_sha256"] = _sha256(manifest_path)
    return doc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_weights(args, out: _Outputs) -> None:
    g = _load_single_graph(args.graph)
    names = _filtration_list(args.filtration)
    if "mV" in names:
        raise UsageError("mV is metric-based and has no node/edge weighting")
    columns = {}
    for name in names:
        w = compute_weighting(g, FiltrationSpec(name, alpha=Fraction(args.alpha)))
        if args.per_node:
            if not isinstance(w, NodeWeighting):
                raise UsageError(f"{name} is edge-based; drop --per-node")
            columns[name] = w.values
        elif isinstance(w, NodeWeighting):
            # node weightings export their propagated edge values
            columns[name] = {(u, v): max(w.values[u], w.values[v]) for u, v in g.edges}
        else:
            columns[name] = w.values
    if args.per_node:
        rows = [[v] + [_fmt(columns[n][v]) for n in names] for v in range(g.n)]
        out.write_table(Path(args.out), ["v"] + names, rows)
    else:
        rows = [[e[0], e[1]] + [_fmt(columns[n][e]) for n in names] for e in g.edges]
        out.write_table(Path(args.out), ["u", "v"] + names, rows)


def cmd_ph(args, out: _Outputs) -> None:
    g = _load_single_graph(args.graph)
    names = _filtration_list(args.filtration)
    if len(names) != 1:
        raise UsageError("ph takes exactly one filtration")
    if args.k < 1:
        raise UsageError("k must be >= 1")
    spec = FiltrationSpec(names[0], alpha=Fraction(args.alpha))
    if spec.name == "mV":
        complex_ = vietoris_rips(g, args.k)
    else:
        complex_ = build_complex(g, compute_weighting(g, spec), args.k)
    if args.dump_complex:
        out.write_text(Path(args.dump_complex), "\n".join(complex_.dump_lines()) + "\n")
    d = compute_persistence(complex_)
    # zero-persistence pairs stay internal; the exported diagram lists the
    # informative points only
    rows = [[p.dim, _fmt(p.birth), "inf" if p.death is None else _fmt(p.death)]
            for p in d.points if p.death is None or p.death != p.birth]
    out.write_table(Path(args.out), ["dim", "birth", "death"], rows)


def _manifest_doc(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"manifest {path} does not exist")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise UsageError(f"manifest {path}: invalid JSON ({e})")
    if not isinstance(doc, dict) or not doc:
        raise UsageError(f"manifest {path}: expected a non-empty JSON object")
    return doc


def _graphs_from_doc(doc: dict, base: Path) -> list[Path]:
    paths = doc.get("graphs")
    if not paths:
        raise UsageError("manifest needs a 'graphs' entry")
    if isinstance(paths, str):
        paths = [paths]
    resolved = [base / p for p in paths]
    missing = [str(p) for p in resolved if not p.exists()]
    if missing:
        raise UsageError(f"missing graph files: {', '.join(missing)}")
    return resolved


def cmd_iso(args, out: _Outputs) -> None:
    doc = _manifest_doc(args.manifest)
    base = Path(args.manifest).parent
    filtrations = _filtration_list(doc.get("filtrations", ["eSum"]))
    k_levels = doc.get("k", [1])
    pairs_entry = doc.get("pairs", "all")
    if isinstance(pairs_entry, str) and pairs_entry != "all":
        # path to a pair-manifest file with explicit left/right records
        pairs = load_pair_manifest(base / pairs_entry)
        manifest = manifest_from_pairs(pairs, filtrations, k_levels, seed=args.seed)
    else:
        paths = _graphs_from_doc(doc, base)
        pair_list = None if pairs_entry == "all" else pairs_entry
        manifest = manifest_from_files(paths, pair_list, filtrations, k_levels,
                                       seed=args.seed)
    result = iso_gate(manifest, jobs=args.jobs)
    out_dir = Path(args.out)
    out.write_table(out_dir / "success_rates", ["filtration", "k", "success_rate"],
                    [[name, k, _fmt(rate)] for (name, k), rate in result.rates.items()])
    out.write_table(out_dir / "pair_detail",
                    ["left", "right", "label", "filtration", "k",
                     "distinct", "max_dim", "distance"],
                    [[r.pair[0], r.pair[1], r.label or "", r.filtration, r.k,
                      int(r.verdict.distinct), r.verdict.max_dim, _fmt(r.verdict.distance)]
                     for r in result.detail])
    out.write_json(out_dir / "run_meta.json", _meta(args, Path(args.manifest), {
        "filtrations": filtrations, "k": list(k_levels),
        "skipped": [list(s) for s in result.skipped],
        "n_graphs": len(manifest.graphs), "n_pairs": len(manifest.pairs),
    }))


def cmd_sensitivity(args, out: _Outputs) -> None:
    doc = _manifest_doc(args.manifest)
    gen = doc.get("generator")
    if not gen:
        raise UsageError("sensitivity manifest needs a 'generator' entry")
    gen = dict(gen)
    gen.setdefault("seed", args.seed)
    try:
        spec = GeneratorSpec.from_dict(gen)
    except (TypeError, ValueError) as e:
        raise UsageError(f"bad generator spec: {e}")
    filtrations = _filtration_list(doc.get("filtrations", ["eSum", "nD"]))
    steps = int(doc.get("steps", 50))
    runs = int(doc.get("runs", 50))
    perturbation = doc.get("perturbation", "remove")
    if perturbation not in ("rewire", "remove"):
        raise UsageError(f"unknown perturbation {perturbation!r}")
    result = sensitivity_run(spec, perturbation, steps, runs, filtrations, jobs=args.jobs)
    rows = []
    for name in result.filtrations:
        means, sds = result.mean(name), result.sd(name)
        rows += [[name, step, _fmt(means[step]), _fmt(sds[step])]
                 for step in range(len(means))]
    out_dir = Path(args.out)
    out.write_table(out_dir / "sensitivity", ["filtration", "step", "mean", "sd"], rows)
    out.write_json(out_dir / "run_meta.json", _meta(args, Path(args.manifest), {
        "generator": gen, "perturbation": perturbation,
        "steps": steps, "runs": runs, "filtrations": filtrations,
    }))


def cmd_egodist(args, out: _Outputs) -> None:
    doc = _manifest_doc(args.manifest)
    base = Path(args.manifest).parent
    graphs = []
    for p in _graphs_from_doc(doc, base):
        graphs.extend(load_graph_file(p))
    cap = Fraction(str(doc.get("T", "0.5")))
    step = Fraction(str(doc.get("delta", "0.01")))
    pairs = doc.get("pairs", "all")
    if pairs == "all":
        pairs = [[i, j] for i in range(len(graphs)) for j in range(i + 1, len(graphs))]
    rows = []
    for rec in pairs:
        i, j = rec[0], rec[1]
        distinct, dist = ego_verdict(graphs[i], graphs[j], cap, step)
        rows.append([i, j, _fmt(dist), int(distinct)])
    out_dir = Path(args.out)
    out.write_table(out_dir / "egodist", ["left", "right", "distance", "distinct"], rows)
    out.write_json(out_dir / "run_meta.json", _meta(args, Path(args.manifest), {
        "T": str(cap), "delta": str(step), "n_graphs": len(graphs),
    }))


def cmd_export(args, out: _Outputs) -> None:
    doc = _manifest_doc(args.manifest)
    base = Path(args.manifest).parent
    graphs = []
    for p in _graphs_from_doc(doc, base):
        graphs.extend(load_graph_file(p))
    filtration = doc.get("filtration", "eSum")
    _filtration_list(filtration)
    k = int(doc.get("k", 1))
    if k < 1:
        raise UsageError("k must be >= 1")
    image = doc.get("image", {})
    resolution = tuple(image.get("resolution", [20, 20]))
    table = export_features(graphs, filtration, k,
                            resolution=resolution,
                            bandwidth=image.get("bandwidth"),
                            weight=image.get("weight", "linear"),
                            jobs=args.jobs)
    rows = [[int(row[0])] + [_fmt(x) for x in row[1:]] for row in table.rows]
    out_dir = Path(args.out)
    out.write_table(out_dir / "features", table.header, rows)
    out.write_json(out_dir / "run_meta.json", _meta(args, Path(args.manifest), {
        "filtration": filtration, "k": k,
        "image": {
            "resolution": list(table.params.resolution),
            "birth_range": list(table.params.birth_range),
            "pers_range": list(table.params.pers_range),
            "bandwidth": table.params.resolved_bandwidth(),
            "weight": table.params.weight,
            "essential_value": table.essential_value,
        },
        "n_graphs": len(graphs),
    }))


def cmd_gen(args, out: _Outputs) -> None:
    kwargs = {"model": args.model, "n": args.n, "seed": args.seed}
    if args.model == "ER":
        kwargs["p"] = args.p
    elif args.model == "BA":
        kwargs["m"] = args.m
    else:
        kwargs.update(beta=args.beta, s=args.s)
    try:
        spec = GeneratorSpec.from_dict(kwargs)
    except ValueError as e:
        raise UsageError(str(e))
    lines = [encode_graph6(generate(replace(spec, seed=args.seed + i)))
             for i in range(args.count)]
    out.write_text(Path(args.out), "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motifph",
        description="Motif-based filtrations for persistent homology on graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, manifest=False):
        p.add_argument("--config", help="key=value config file; flags win")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--jobs", type=int, default=default_jobs())
        p.add_argument("--out", required=True)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        if manifest:
            p.add_argument("manifest", help="experiment manifest (JSON)")

    p = sub.add_parser("weights", help="edge/node weighting CSV for a graph")
    p.add_argument("graph")
    p.add_argument("--filtration", default="eT,eS,eP,eSum")
    p.add_argument("--alpha", default="0", help="eO smoothing parameter")
    p.add_argument("--per-node", action="store_true",
                   help="export raw node values (node filtrations only)")
    common(p)

    p = sub.add_parser("ph", help="persistence diagram for a graph")
    p.add_argument("graph")
    p.add_argument("--filtration", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", default="0")
    p.add_argument("--dump-complex", help="also dump the filtered complex")
    common(p)

    for name, fn_help in (("iso", "isomorphism success-rate sweep"),
                          ("sensitivity", "perturbation sensitivity trajectories"),
                          ("egodist", "ego-distance baseline over pairs"),
                          ("export", "persistence-image feature table")):
        p = sub.add_parser(name, help=fn_help)
        common(p, manifest=True)

    p = sub.add_parser("gen", help="write random graphs as graph6")
    p.add_argument("--model", choices=["ER", "BA", "WS"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    common(p)
    return parser


_COMMANDS = {
    "weights": cmd_weights,
    "ph": cmd_ph,
    "iso": cmd_iso,
    "sensitivity": cmd_sensitivity,
    "egodist": cmd_egodist,
    "export": cmd_export,
    "gen": cmd_gen,
}


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Pre-scan for --config and fold its key=value pairs into subcommand
    defaults; explicit flags always win over config values."""
    if "--config" not in argv:
        return
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return
    path = Path(argv[idx + 1])
    if not path.exists():
        raise UsageError(f"config file {path} does not exist")
    raw = {}
    for ln, line in enumerate(path.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value")
        key, _, value = line.partition("=")
        raw[key.strip().replace("-", "_")] = value.strip()
    for subparser in parser._subparsers._group_actions[0].choices.values():  # noqa: SLF001
        updates = {}
        for action in subparser._actions:  # noqa: SLF001
            if action.dest in raw:
                value = raw[action.dest]
                updates[action.dest] = action.type(value) if action.type else value
        subparser.set_defaults(**updates)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out = _Outputs(fmt=getattr(args, "format", "csv"))
    try:
        _COMMANDS[args.command](args, out)
        return 0
    except (UsageError, GraphFormatError, FileNotFoundError) as e:
        out.cleanup()
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        out.cleanup()
        print(f"runtime error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
