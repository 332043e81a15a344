"""Command-line surface: split, train, rank.

`split` adds a deterministic train/valid/test column to a feature CSV;
`train` fits random forests per property and writes a metrics CSV;
`rank` aggregates a metrics CSV into per-filtration rank statistics.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .ranking import rank_filtrations
from .table import load_feature_csv, write_split_csv
from .train import DEFAULT_MODEL_PARAMS, mean_predictor_mae, train_eval


def cmd_split(args) -> int:
    write_split_csv(args.features, args.out, args.seed)
    return 0


def cmd_train(args) -> int:
    table = load_feature_csv(args.features)
    props = args.properties.split(",") if args.properties else table.properties
    params = dict(DEFAULT_MODEL_PARAMS)
    if args.trees:
        params["n_estimators"] = args.trees
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["filtration", "property", "kind", "metric",
                         "baseline_mae", "constant_target"])
        for prop in props:
            res = train_eval(table, prop, params, seed=args.seed)
            baseline = "" if res.kind == "accuracy" else repr(mean_predictor_mae(table, prop))
            writer.writerow([args.filtration, prop, res.kind, repr(res.metric),
                             baseline, int(res.constant_target)])
    meta = {
        "model": "RandomForestRegressor",
        "params": params,
        "seed": args.seed,
        "n_rows": len(table.graph_ids),
    }
    Path(str(out) + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_rank(args) -> int:
    metrics: dict[str, dict[str, float]] = {}
    for path in args.metrics:
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                metrics.setdefault(row["property"], {})[row["filtration"]] = float(row["metric"])
    summary = rank_filtrations(metrics)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "ranks.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["filtration", "property", "rank"])
        for (filt, prop), rank in sorted(summary.ranks.items()):
            writer.writerow([filt, prop, rank])
    with open(out / "rank_summary.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["filtration", "median_rank", "iqr", "mean_rank"])
        for filt in sorted(summary.aggregates):
            median, iqr, mean = summary.aggregates[filt]
            writer.writerow([filt, repr(median), repr(iqr), repr(mean)])
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="propred",
        description="Random-forest property prediction on persistence-image features.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="add a train/valid/test column to a feature CSV")
    p.add_argument("features")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="fit random forests and write a metrics CSV")
    p.add_argument("features", help="feature CSV with a split column")
    p.add_argument("--filtration", required=True,
                   help="label recorded in the metrics rows")
    p.add_argument("--properties", default="",
                   help="comma list; defaults to every prop_* column")
    p.add_argument("--trees", type=int, default=0)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("rank", help="aggregate metrics CSVs into rank statistics")
    p.add_argument("metrics", nargs="+")
    p.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    try:
        return {"split": cmd_split, "train": cmd_train, "rank": cmd_rank}[args.command](args)
    except (ValueError, KeyError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
