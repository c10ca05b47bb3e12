"""
Two-tier MIL over random pseudo-bags.

Tier 1 runs attention pooling on each pseudo-bag (each inherits the bag label
and has its own score). Tier 2 treats the attention-weighted pseudo-bag
features as instances and pools them into the bag score.
"""

from dataclasses import dataclass

import numpy as np

from weaksupcon.common.errors import DataError
from weaksupcon.milmodels.heads import MILForward, bag_tensor, classify, gated_attention_pool
from weaksupcon.numcore import ops


@dataclass
class PseudoBag:
    parent_id: int
    label: int
    indices: np.ndarray
    instances: np.ndarray


def split_indices(n, m, rng):
    """Shuffled round-robin partition of range(n) into m groups."""
    if n < m:
        raise DataError(f"cannot split {n} instances into {m} pseudo-bags", n=n, m=m)
    order = rng.generator.permutation(n)
    return [np.sort(order[k::m]) for k in range(m)]


def dtfd_split(bag, m, rng):
    """
    Randomly split a bag into m label-inheriting pseudo-bags whose sizes differ
    by at most one.

    Args:
        bag (Bag): Source bag, at least m instances
        m (int): Number of pseudo-bags
        rng (Rng): Split stream

    Returns:
        list: PseudoBags partitioning the bag
    """
    return [
        PseudoBag(parent_id=bag.id, label=bag.label, indices=idx, instances=bag.instances[idx])
        for idx in split_indices(bag.size, m, rng)
    ]


def dtfd_forward(features, params, m, rng, bag_id=0, groups=None):
    """
    Tier-1 pseudo-bag scores and the tier-2 bag score.

    Args:
        features (ndarray | Tensor): n x D bag features
        params (dict): tier1.* and tier2.* parameters
        m (int): Number of pseudo-bags
        rng (Rng): Split stream (ignored when groups is given)
        bag_id (int): Reported bag id
        groups (list): Precomputed index groups

    Returns:
        MILForward: logit from tier 2, one pseudo logit per pseudo-bag,
            tier-2 attention over pseudo-bags and the implied per-instance
            attention (tier-2 weight times tier-1 weight)
    """
    h = bag_tensor(features)
    groups = groups if groups is not None else split_indices(h.shape[0], m, rng)

    pooled, pseudo_logits, tier1_weights = [], [], []
    for idx in groups:
        feature, attention = gated_attention_pool(ops.take_rows(h, idx), params, "tier1.attention")
        pooled.append(feature)
        pseudo_logits.append(classify(feature, params, "tier1.classifier"))
        tier1_weights.append(attention.data.reshape(-1))

    bag_feature, tier2_attention = gated_attention_pool(ops.concat_rows(pooled), params, "tier2.attention")
    instance_attention = np.zeros(h.shape[0])
    for k, idx in enumerate(groups):
        instance_attention[idx] = tier2_attention.data[k, 0] * tier1_weights[k]

    return MILForward(
        bag_id=bag_id,
        logit=classify(bag_feature, params, "tier2.classifier"),
        attention=tier2_attention,
        pseudo_logits=pseudo_logits,
        instance_attention=instance_attention,
    )
