"""Rank aggregation across prediction tasks.

Within a task, filtrations are ranked by metric: descending for accuracy
tasks, ascending for error tasks.  Ties share the minimum rank.  Per
filtration the summary reports median, interquartile range, and mean rank
across tasks (boxplot inputs).
"""

from __future__ import annotations

from dataclasses import dataclass

from .train import metric_kind


@dataclass
class RankSummary:
    # (filtration, property) -> rank
    ranks: dict[tuple[str, str], int]
    # filtration -> (median, iqr, mean)
    aggregates: dict[str, tuple[float, float, float]]


def _min_ranks(values: list[float], higher_better: bool) -> list[int]:
    ranks = []
    for v in values:
        if higher_better:
            better = sum(1 for w in values if w > v)
        else:
            better = sum(1 for w in values if w < v)
        ranks.append(1 + better)
    return ranks


def _quantile(sorted_xs: list[float], q: float) -> float:
    # linear interpolation, matching the common "linear" definition
    if not sorted_xs:
        raise ValueError("empty")
    pos = q * (len(sorted_xs) - 1)
    lo = int(pos)
    hi = min(lo + 1, len(sorted_xs) - 1)
    frac = pos - lo
    return sorted_xs[lo] * (1 - frac) + sorted_xs[hi] * frac


def rank_filtrations(metrics: dict[str, dict[str, float]]) -> RankSummary:
    """``metrics[property][filtration] = metric value`` -> per-task min-ranks
    plus per-filtration rank statistics."""
    ranks: dict[tuple[str, str], int] = {}
    per_filtration: dict[str, list[int]] = {}
    for prop, by_filt in metrics.items():
        if len(by_filt) < 2:
            raise ValueError(f"task {prop!r} needs >= 2 filtrations to rank")
        names = sorted(by_filt)
        values = [by_filt[name] for name in names]
        higher = metric_kind(prop) == "accuracy"
        task_ranks = _min_ranks(values, higher)
        for name, rank in zip(names, task_ranks):
            ranks[(name, prop)] = rank
            per_filtration.setdefault(name, []).append(rank)
    aggregates = {}
    for name, rs in per_filtration.items():
        xs = sorted(float(r) for r in rs)
        median = _quantile(xs, 0.5)
        iqr = _quantile(xs, 0.75) - _quantile(xs, 0.25)
        aggregates[name] = (median, iqr, sum(xs) / len(xs))
    return RankSummary(ranks, aggregates)
