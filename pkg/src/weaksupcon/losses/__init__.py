from weaksupcon.losses.config import NEGATIVE, POSITIVE, ContrastiveBatch, LossConfig, partition_views
from weaksupcon.losses.cosine_similarity import cosine_similarity
from weaksupcon.losses.similarity_loss import similarity_loss
from weaksupcon.losses.simclr import simclr_loss, simclr_pair_term
from weaksupcon.losses.supcon import supcon_decomposition_check, supcon_loss
from weaksupcon.losses.weaksupcon import LossParts, weaksupcon_loss

__all__ = [
    "NEGATIVE",
    "POSITIVE",
    "ContrastiveBatch",
    "LossConfig",
    "LossParts",
    "cosine_similarity",
    "partition_views",
    "similarity_loss",
    "simclr_loss",
    "simclr_pair_term",
    "supcon_decomposition_check",
    "supcon_loss",
    "weaksupcon_loss",
]
