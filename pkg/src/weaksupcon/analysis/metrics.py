from dataclasses import dataclass
from typing import Optional

import numpy as np

from weaksupcon.common.errors import DataError


@dataclass(frozen=True)
class MetricsReport:
    balanced_accuracy: float
    accuracy: float
    auc: Optional[float]
    n_pos: int
    n_neg: int
    threshold: float = 0.5


def _binary(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.size == 0 or scores.shape != labels.shape:
        raise DataError(f"scores and labels must be non-empty and equally long ({scores.size} vs {labels.size})")
    if not np.all(np.isin(labels, (0, 1))):
        raise DataError("labels must be binary (0/1)")
    n_pos = int(labels.sum())
    n_neg = int(labels.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise DataError(f"both classes must be present (positives={n_pos}, negatives={n_neg})", n_pos=n_pos, n_neg=n_neg)
    return scores, labels, n_pos, n_neg


def accuracy_metrics(scores, labels, threshold=0.5):
    """
    Accuracy and balanced accuracy at a decision threshold.

    A score equal to the threshold is predicted positive.

    Args:
        scores (array-like): Positive-class probabilities per bag
        labels (array-like): 0/1 bag labels, both classes present
        threshold (float): Decision threshold

    Returns:
        MetricsReport: With auc left as None
    """
    scores, labels, n_pos, n_neg = _binary(scores, labels)
    predicted = (scores >= threshold).astype(np.int64)
    correct = predicted == labels
    recall_pos = correct[labels == 1].sum() / n_pos
    recall_neg = correct[labels == 0].sum() / n_neg
    return MetricsReport(
        balanced_accuracy=float((recall_pos + recall_neg) / 2.0),
        accuracy=float(correct.mean()),
        auc=None,
        n_pos=n_pos,
        n_neg=n_neg,
        threshold=threshold,
    )


def roc_auc(scores, labels):
    """
    Mann-Whitney AUC with tied scores sharing their average rank (half credit).

    Args:
        scores (array-like): Scores per bag
        labels (array-like): 0/1 labels, both classes present

    Returns:
        float: Probability that a random positive outranks a random negative
    """
    scores, labels, n_pos, n_neg = _binary(scores, labels)
    order = np.argsort(scores, kind="mergesort")
    sorted_scores = scores[order]
    ranks = np.empty(scores.size, dtype=np.float64)
    start = 0
    while start < scores.size:
        stop = start + 1
        while stop < scores.size and sorted_scores[stop] == sorted_scores[start]:
            stop += 1
        # ranks are 1-based; a tie group shares the mean of its ranks
        ranks[order[start:stop]] = (start + 1 + stop) / 2.0
        start = stop
    rank_sum = ranks[labels == 1].sum()
    u_statistic = rank_sum - n_pos * (n_pos + 1) / 2.0
    return float(u_statistic / (n_pos * n_neg))


def evaluate_scores(scores, labels, threshold=0.5):
    report = accuracy_metrics(scores, labels, threshold)
    return MetricsReport(
        balanced_accuracy=report.balanced_accuracy,
        accuracy=report.accuracy,
        auc=roc_auc(scores, labels),
        n_pos=report.n_pos,
        n_neg=report.n_neg,
        threshold=threshold,
    )
