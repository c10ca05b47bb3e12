"""
SimCLR (NT-Xent) pair term and its sum over a view subset.
"""

import numpy as np

from weaksupcon.common.errors import BatchError
from weaksupcon.losses.cosine_similarity import prepared_features
from weaksupcon.numcore import ops
from weaksupcon.numcore.tensor import Tensor


def _subset_index(batch, subset):
    if subset is None:
        return np.arange(len(batch))
    idx = np.unique(np.asarray(list(subset), dtype=np.int64))
    if idx.size and (idx[0] < 0 or idx[-1] >= len(batch)):
        raise BatchError(f"subset indices out of range for batch of {len(batch)} views", size=len(batch))
    return idx


def simclr_pair_term(batch, i, j, cfg, subset=None):
    """
    l_{i,j}: -log of the softmax weight of j among all k != i in the subset.

    Args:
        batch (ContrastiveBatch): Views
        i (int): Anchor view
        j (int): The other view of the same origin
        cfg (LossConfig): Temperature and normalization
        subset (iterable): Views forming the denominator; the whole batch by default

    Returns:
        Tensor: Scalar loss term
    """
    if i == j or batch.origin[i] != batch.origin[j]:
        raise BatchError(f"views {i} and {j} do not form a positive pair", i=int(i), j=int(j))
    idx = _subset_index(batch, subset)
    if i not in idx or j not in idx:
        raise BatchError(f"views {i} and {j} must both be in the subset", i=int(i), j=int(j))

    z = prepared_features(batch, cfg)
    logits = ops.scale(ops.matmul(ops.take_rows(z, [i]), ops.transpose(ops.take_rows(z, idx))), 1.0 / cfg.tau)
    others = (idx != i)[None, :]
    target = (idx == j)[None, :].astype(np.float64)
    return ops.sub(ops.sum(ops.log_sum_exp(logits, axis=1, mask=others)), ops.sum(ops.mul(logits, target)))


def simclr_loss(batch, subset, cfg):
    """
    Sum of l_{i,p(i)} over the subset, both numerator and denominator
    restricted to it.

    Args:
        batch (ContrastiveBatch): Views
        subset (iterable): View indices, closed under view pairing (None = all)
        cfg (LossConfig): Temperature and normalization

    Returns:
        Tensor: Scalar loss; 0 for an empty subset
    """
    idx = _subset_index(batch, subset)
    if idx.size == 0:
        return Tensor(0.0)

    origins, counts = np.unique(batch.origin[idx], return_counts=True)
    orphans = origins[counts != 2]
    if orphans.size:
        raise BatchError(f"subset is not closed under view pairing; orphan origins {orphans.tolist()}", orphans=orphans.tolist())

    position = {int(v): k for k, v in enumerate(idx)}
    local_partner = np.array([position[int(batch.partner[v])] for v in idx])
    m = idx.size
    partner_mask = np.zeros((m, m))
    partner_mask[np.arange(m), local_partner] = 1.0

    zs = ops.take_rows(prepared_features(batch, cfg), idx)
    logits = ops.scale(ops.matmul(zs, ops.transpose(zs)), 1.0 / cfg.tau)
    lse = ops.log_sum_exp(logits, axis=1, mask=~np.eye(m, dtype=bool))
    positives = ops.sum(ops.mul(logits, partner_mask), axis=1)
    return ops.sum(ops.sub(lse, positives))
