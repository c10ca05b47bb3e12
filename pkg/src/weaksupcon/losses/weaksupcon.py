from typing import NamedTuple

from weaksupcon.losses.config import partition_views
from weaksupcon.losses.similarity_loss import similarity_loss
from weaksupcon.losses.simclr import simclr_loss
from weaksupcon.numcore import ops
from weaksupcon.numcore.tensor import Tensor


class LossParts(NamedTuple):
    total: Tensor
    similarity_part: Tensor
    simclr_part: Tensor


def weaksupcon_loss(batch, cfg):
    """
    alpha * Similarity Loss on negative-bag views + SimCLR loss on
    positive-bag views.

    Args:
        batch (ContrastiveBatch): Views of both bag labels
        cfg (LossConfig): tau, alpha and simclr_weight

    Returns:
        LossParts: total plus the two unweighted parts
    """
    _, pos = partition_views(batch)
    similarity_part = similarity_loss(batch, cfg)
    simclr_part = simclr_loss(batch, pos, cfg)
    total = ops.add(ops.scale(similarity_part, cfg.alpha), ops.scale(simclr_part, cfg.simclr_weight))
    return LossParts(total=total, similarity_part=similarity_part, simclr_part=simclr_part)
