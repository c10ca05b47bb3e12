import numpy as np

from weaksupcon.losses.config import partition_views
from weaksupcon.losses.cosine_similarity import prepared_features
from weaksupcon.numcore import ops
from weaksupcon.numcore.tensor import Tensor


def similarity_loss(batch, cfg):
    """
    Attraction among negative-bag views:
    sum_{i in Neg} -1/|Neg| sum_{j in Neg, j != i} z_i . z_j / tau.

    Returns 0 when there are fewer than two negative views.
    """
    neg, _ = partition_views(batch)
    if neg.size <= 1:
        return Tensor(0.0)
    zs = ops.take_rows(prepared_features(batch, cfg), neg)
    logits = ops.scale(ops.matmul(zs, ops.transpose(zs)), 1.0 / cfg.tau)
    off_diagonal = 1.0 - np.eye(neg.size)
    return ops.scale(ops.sum(ops.mul(logits, off_diagonal)), -1.0 / neg.size)
