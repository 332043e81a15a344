"""Random-forest training and evaluation on feature tables.

Radius, diameter, and girth are scored by accuracy after rounding
predictions to the nearest integer; every other property by mean absolute
error on the held-out test split.  Fitting only ever sees the train slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.ensemble import RandomForestRegressor

from .table import FeatureTable

ACCURACY_PROPERTIES = ("max_radius", "max_diameter", "girth")

DEFAULT_MODEL_PARAMS = {"n_estimators": 500}


@dataclass
class EvalResult:
    property: str
    metric: float
    kind: str  # "accuracy" | "mae"
    constant_target: bool
    n_train: int
    n_test: int
    model_params: dict = field(default_factory=dict)

    @property
    def higher_is_better(self) -> bool:
        return self.kind == "accuracy"


def metric_kind(prop: str) -> str:
    return "accuracy" if prop in ACCURACY_PROPERTIES else "mae"


def mean_predictor_mae(table: FeatureTable, prop: str) -> float:
    """Baseline: predict the train-split mean for every test row."""
    y = table.targets[prop]
    train, test = table.rows_in("train"), table.rows_in("test")
    mean = float(y[train].mean())
    return float(np.abs(y[test] - mean).mean())


def train_eval(table: FeatureTable, prop: str, model_params: dict | None = None,
               seed: int = 0) -> EvalResult:
    if prop not in table.targets:
        raise KeyError(f"unknown property {prop!r}; have {table.properties}")
    params = dict(DEFAULT_MODEL_PARAMS)
    params.update(model_params or {})
    y = table.targets[prop]
    train, test = table.rows_in("train"), table.rows_in("test")
    if len(train) == 0 or len(test) == 0:
        raise ValueError("split must contain train and test rows")
    x_train, y_train = table.features[train], y[train]
    constant = bool(np.all(y_train == y_train[0]))
    model = RandomForestRegressor(random_state=seed, **params)
    model.fit(x_train, y_train)
    pred = model.predict(table.features[test])
    kind = metric_kind(prop)
    if kind == "accuracy":
        metric = float((np.rint(pred) == np.rint(y[test])).mean())
    else:
        metric = float(np.abs(pred - y[test]).mean())
    return EvalResult(prop, metric, kind, constant, len(train), len(test), params)
