from weaksupcon.analysis.anchor import AnchorReport, anchor_cosines, densest_anchor
from weaksupcon.analysis.diagnostics import (
    feature_variance,
    group_fraction_above,
    loss_plateau,
    mean_pairwise_cosine,
    witness_attention_share,
)
from weaksupcon.analysis.histogram import cosine_histogram, histogram_edges
from weaksupcon.analysis.metrics import MetricsReport, accuracy_metrics, evaluate_scores, roc_auc
from weaksupcon.analysis.pca_spread import PCASpread, pca_spread

__all__ = [
    "AnchorReport",
    "MetricsReport",
    "PCASpread",
    "accuracy_metrics",
    "anchor_cosines",
    "cosine_histogram",
    "densest_anchor",
    "evaluate_scores",
    "feature_variance",
    "group_fraction_above",
    "histogram_edges",
    "loss_plateau",
    "mean_pairwise_cosine",
    "pca_spread",
    "roc_auc",
    "witness_attention_share",
]
