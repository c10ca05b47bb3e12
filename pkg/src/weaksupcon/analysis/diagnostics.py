"""
Feature-space and training-curve diagnostics.
"""

import numpy as np

from weaksupcon.common.errors import DataError


def feature_variance(features):
    """Mean per-coordinate variance; near zero means the features collapsed."""
    features = np.asarray(features, dtype=np.float64)
    return float(np.mean(np.var(features, axis=0)))


def mean_pairwise_cosine(features):
    features = np.asarray(features, dtype=np.float64)
    n = features.shape[0]
    if n < 2:
        raise DataError("mean_pairwise_cosine: need at least two features")
    unit = features / np.linalg.norm(features, axis=1, keepdims=True)
    gram = unit @ unit.T
    return float((gram.sum() - np.trace(gram)) / (n * (n - 1)))


def group_fraction_above(cosines, groups, thresholds=(0.9, 0.999)):
    """
    Fraction of each group's anchor cosines strictly above each threshold.

    Returns:
        dict: group -> {threshold: fraction}
    """
    cosines = np.asarray(cosines, dtype=np.float64)
    groups = np.asarray(groups)
    return {
        group: {t: float(np.mean(cosines[groups == group] > t)) for t in thresholds}
        for group in dict.fromkeys(groups.tolist())
    }


def loss_plateau(loss_log, window=10, tolerance=1e-3):
    """
    True when the total loss moved by less than tolerance (relative to its
    starting magnitude) over the first `window` epochs.
    """
    totals = np.array([entry.total for entry in loss_log[:window]], dtype=np.float64)
    if totals.size < 2:
        return False
    spread = totals.max() - totals.min()
    return bool(spread <= tolerance * max(1.0, abs(totals[0])))


def witness_attention_share(attention, witness_mask):
    """
    Attention mass on ground-truth witnesses, and the mean weight of a witness
    relative to the mean weight of a non-witness.
    """
    attention = np.asarray(attention, dtype=np.float64)
    mask = np.asarray(witness_mask, dtype=bool)
    share = float(attention[mask].sum())
    if not mask.any() or mask.all():
        return share, float("nan")
    return share, float(attention[mask].mean() / attention[~mask].mean())
