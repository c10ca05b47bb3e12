"""
Supervised contrastive loss and the check that its expanded form agrees.
"""

import numpy as np

from weaksupcon.common.errors import BatchError
from weaksupcon.losses.cosine_similarity import prepared_features
from weaksupcon.numcore import ops


def _positive_mask(batch):
    if batch.pseudo_label is None:
        raise BatchError("supcon_loss needs pseudo_label", field="pseudo_label")
    classes, counts = np.unique(batch.pseudo_label, return_counts=True)
    singletons = classes[counts < 2]
    if singletons.size:
        raise BatchError(f"class {int(singletons[0])} has a single member", label=int(singletons[0]))
    not_self = ~np.eye(len(batch), dtype=bool)
    same = batch.pseudo_label[:, None] == batch.pseudo_label[None, :]
    return same & not_self, not_self


def supcon_loss(batch, cfg):
    """
    sum_i -1/|P(i)| sum_{p in P(i)} log softmax_{a != i}(z_i . z_a / tau)[p]

    Args:
        batch (ContrastiveBatch): Views with pseudo_label
        cfg (LossConfig): Temperature and normalization

    Returns:
        Tensor: Scalar loss
    """
    positives, not_self = _positive_mask(batch)
    weights = positives / positives.sum(axis=1, keepdims=True)
    z = prepared_features(batch, cfg)
    logits = ops.scale(ops.matmul(z, ops.transpose(z)), 1.0 / cfg.tau)
    lse = ops.log_sum_exp(logits, axis=1, mask=not_self)
    return ops.sum(ops.sub(lse, ops.sum(ops.mul(logits, weights), axis=1)))


def supcon_decomposition_check(batch, cfg):
    """
    Absolute difference between the log-ratio form and the expanded
    (dot product minus log-sum-exp) form of the SupCon loss.

    Each row is shifted by its largest logit before exponentiating. Ratios
    that underflow float64 are taken in log space.
    """
    positives, not_self = _positive_mask(batch)
    z = prepared_features(batch, cfg).data
    s = z @ z.T / cfg.tau

    ratio_form = 0.0
    expanded_form = 0.0
    for i in range(len(batch)):
        row = s[i][not_self[i]]
        shift = np.max(row)
        shifted_sum = np.sum(np.exp(row - shift))
        members = np.flatnonzero(positives[i])
        ratios = np.exp(s[i, members] - shift) / shifted_sum
        with np.errstate(divide="ignore"):
            log_ratios = np.where(ratios > 0.0, np.log(ratios), s[i, members] - shift - np.log(shifted_sum))
        ratio_form += -1.0 / members.size * np.sum(log_ratios)
        expanded_form += -1.0 / members.size * np.sum(s[i, members] - (shift + np.log(shifted_sum)))
    return float(abs(ratio_form - expanded_form))
