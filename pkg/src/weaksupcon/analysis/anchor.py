"""
Densest-cluster anchor: the feature with the most near-duplicate neighbors,
and the cosine similarity of every feature to it.
"""

from dataclasses import dataclass, field

import numpy as np

from weaksupcon.analysis.histogram import DEFAULT_BINS, cosine_histogram
from weaksupcon.common.errors import DataError, DomainError

REPORT_THRESHOLDS = (0.9, 0.999)
UNIT_NORM_TOLERANCE = 1e-6


@dataclass
class AnchorReport:
    anchor_index: int
    neighbor_count: int
    threshold: float
    cosines: np.ndarray
    histogram: np.ndarray
    fraction_above: dict = field(default_factory=dict)


def _check_unit_rows(features):
    norms = np.linalg.norm(features, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_NORM_TOLERANCE)
    if bad.size:
        raise DomainError(f"densest_anchor: row {bad[0]} has norm {norms[bad[0]]:.6f}, expected unit rows", row=int(bad[0]))


def neighbor_counts(features, threshold=0.999, block=1024):
    """Per feature, the number of other features with cosine strictly above threshold."""
    counts = np.zeros(features.shape[0], dtype=np.int64)
    for start in range(0, features.shape[0], block):
        cos = features[start:start + block] @ features.T
        rows = np.arange(cos.shape[0])
        cos[rows, start + rows] = -np.inf
        counts[start:start + block] = np.sum(cos > threshold, axis=1)
    return counts


def densest_anchor(features, threshold=0.999, bins=DEFAULT_BINS):
    """
    Anchor = the feature with the most neighbors above threshold (lowest
    index on ties).

    Args:
        features (ndarray): n x D unit-norm rows, n >= 2
        threshold (float): Neighborhood cosine threshold (strict)
        bins (int): Histogram bins over [-1, 1]

    Returns:
        AnchorReport: Anchor, neighbor count, cosines from the anchor to every
            feature, their histogram and the fraction above 0.9 and 0.999
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[0] < 2:
        raise DataError("densest_anchor: need at least two feature rows")
    _check_unit_rows(features)

    counts = neighbor_counts(features, threshold)
    anchor = int(np.argmax(counts))
    cosines = anchor_cosines(features[anchor], features)
    return AnchorReport(
        anchor_index=anchor,
        neighbor_count=int(counts[anchor]),
        threshold=threshold,
        cosines=cosines,
        histogram=cosine_histogram(cosines, bins),
        fraction_above={t: float(np.mean(cosines > t)) for t in REPORT_THRESHOLDS},
    )


def anchor_cosines(anchor, features):
    return np.clip(np.asarray(features, dtype=np.float64) @ np.asarray(anchor, dtype=np.float64), -1.0, 1.0)
