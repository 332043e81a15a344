"""Random-forest property prediction on persistence-image feature tables."""

__version__ = "0.1.0"

from .ranking import RankSummary, rank_filtrations
from .table import FeatureTable, assign_split, load_feature_csv, write_split_csv
from .train import EvalResult, mean_predictor_mae, metric_kind, train_eval

__all__ = [
    "FeatureTable", "assign_split", "load_feature_csv", "write_split_csv",
    "EvalResult", "mean_predictor_mae", "metric_kind", "train_eval",
    "RankSummary", "rank_filtrations", "__version__",
]
