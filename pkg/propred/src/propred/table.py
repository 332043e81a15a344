"""Feature tables read from the persistence-image CSV export.

The expected layout is the exact `features.csv` produced by the graph
pipeline: a `graph_id` column, `img<dim>_<i>` feature columns, and
`prop_<name>` target columns, plus a `split` column with train/valid/test
labels (added here when missing).
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SPLIT_LABELS = ("train", "valid", "test")


@dataclass
class FeatureTable:
    graph_ids: list[int]
    features: np.ndarray          # (rows, n_features) float64
    targets: dict[str, np.ndarray]  # property name -> (rows,) float64
    split: list[str]

    def __post_init__(self):
        n = len(self.graph_ids)
        if self.features.shape[0] != n or len(self.split) != n:
            raise ValueError("row count mismatch between ids, features, and split")
        if np.isnan(self.features).any():
            raise ValueError("feature matrix has missing values")
        bad = set(self.split) - set(SPLIT_LABELS)
        if bad:
            raise ValueError(f"unknown split labels {sorted(bad)}")

    def rows_in(self, label: str) -> np.ndarray:
        return np.array([i for i, s in enumerate(self.split) if s == label])

    @property
    def properties(self) -> list[str]:
        return list(self.targets)


def assign_split(n_rows: int, seed: int,
                 fractions: tuple[float, float] = (0.8, 0.1)) -> list[str]:
    """Deterministic train/valid/test labels (80/10/10 by default)."""
    order = list(range(n_rows))
    random.Random(seed).shuffle(order)
    n_train = int(round(fractions[0] * n_rows))
    n_valid = int(round(fractions[1] * n_rows))
    labels = [""] * n_rows
    for pos, row in enumerate(order):
        if pos < n_train:
            labels[row] = "train"
        elif pos < n_train + n_valid:
            labels[row] = "valid"
        else:
            labels[row] = "test"
    return labels


def load_feature_csv(path: str | Path, split_seed: int | None = None) -> FeatureTable:
    """Load a feature CSV; when it has no split column, `split_seed` must be
    given and an 80/10/10 split is assigned."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader if row]
    cols = {name: i for i, name in enumerate(header)}
    feat_cols = [i for name, i in cols.items() if name.startswith("img")]
    prop_cols = {name[len("prop_"):]: i for name, i in cols.items()
                 if name.startswith("prop_")}
    if "graph_id" not in cols or not feat_cols or not prop_cols:
        raise ValueError(f"{path}: not a feature table (need graph_id/img*/prop_*)")
    graph_ids = [int(float(row[cols["graph_id"]])) for row in rows]
    features = np.array([[float(row[i]) for i in feat_cols] for row in rows])
    targets = {name: np.array([float(row[i]) for row in rows])
               for name, i in prop_cols.items()}
    if "split" in cols:
        split = [row[cols["split"]] for row in rows]
    else:
        if split_seed is None:
            raise ValueError(f"{path} has no split column; pass a split seed")
        split = assign_split(len(rows), split_seed)
    return FeatureTable(graph_ids, features, targets, split)


def write_split_csv(src: str | Path, dst: str | Path, seed: int) -> None:
    """Copy a feature CSV adding a deterministic split column."""
    with open(src, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader if row]
    if "split" in header:
        raise ValueError(f"{src} already has a split column")
    labels = assign_split(len(rows), seed)
    with open(dst, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header + ["split"])
        for row, label in zip(rows, labels):
            writer.writerow(row + [label])
