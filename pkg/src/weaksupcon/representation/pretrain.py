"""
Contrastive pretraining of the shared encoder and projection head.

Each step samples batch_n instances uniformly (with replacement) from the
pooled training instances, builds two augmented views of each, encodes and
projects all 2N views, computes the mode's loss and takes one plain SGD step.
"""

import json
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from weaksupcon.analysis.diagnostics import feature_variance
from weaksupcon.common.checkpoint import Checkpoint
from weaksupcon.common.errors import DataError
from weaksupcon.common.hashing import config_hash
from weaksupcon.common.logger_serialize import logger_serialize
from weaksupcon.losses.config import NEGATIVE, POSITIVE, ContrastiveBatch
from weaksupcon.losses.simclr import simclr_loss
from weaksupcon.losses.supcon import supcon_loss
from weaksupcon.losses.weaksupcon import LossParts, weaksupcon_loss
from weaksupcon.mildata.assign_pseudo_labels import assign_pseudo_labels
from weaksupcon.numcore.rng import rng_streams
from weaksupcon.numcore.tensor import Tensor, backward, build_graph
from weaksupcon.representation.augment_two_views import augment_two_views
from weaksupcon.representation.encode_project import architecture_of, encode_project, init_encoder_projection

# Configure logging
logger = logging.getLogger(__name__)


@dataclass
class LossLogEntry:
    epoch: int
    total: float
    similarity_part: float
    simclr_part: float
    feature_variance: float


@dataclass
class PretrainResult:
    checkpoint: Checkpoint
    loss_log: list = field(default_factory=list)


def mode_loss(batch, cfg):
    """
    Loss for one batch under cfg.mode.

    simclr and supcon report their whole loss as the contrastive part;
    similarity is the WeakSupCon total with the SimCLR term switched off.
    """
    if cfg.mode == "simclr":
        loss = simclr_loss(batch, None, cfg.loss)
        return LossParts(total=loss, similarity_part=Tensor(0.0), simclr_part=loss)
    if cfg.mode == "supcon":
        loss = supcon_loss(batch, cfg.loss)
        return LossParts(total=loss, similarity_part=Tensor(0.0), simclr_part=loss)
    if cfg.mode == "similarity":
        return weaksupcon_loss(batch, replace(cfg.loss, simclr_weight=0.0))
    return weaksupcon_loss(batch, cfg.loss)


def _check_labels(bags, cfg):
    labels = {bag.label for bag in bags}
    if cfg.mode == "weaksupcon" and labels != {NEGATIVE, POSITIVE}:
        raise DataError("weaksupcon pretraining needs both negative and positive bags", labels=sorted(labels))
    if cfg.mode == "similarity" and NEGATIVE not in labels:
        raise DataError("similarity pretraining needs negative bags", labels=sorted(labels))


def pretrain(bags, cfg, enc, proj, aug, run_config_hash=None):
    """
    Train the encoder and projection head.

    Args:
        bags (list): Training Bags
        cfg (PretrainConfig): Mode, loss, batch size, epochs, learning rate, seed
        enc (EncoderSpec): Encoder architecture
        proj (ProjectionSpec): Projection architecture
        aug (AugmentationSpec): View augmentation
        run_config_hash (str): Hash recorded as provenance; defaults to a hash
            of the pretraining settings

    Returns:
        PretrainResult: Final checkpoint and per-epoch loss log
    """
    if not bags:
        raise DataError("pretrain: empty training set")
    _check_labels(bags, cfg)

    streams = rng_streams(cfg.seed)
    params = init_encoder_projection(enc, proj, streams[enc.init_stream])
    leaves = list(params.values())

    instances = np.concatenate([bag.instances for bag in bags], axis=0)
    instance_labels = assign_pseudo_labels(bags)
    total_instances = instances.shape[0]
    steps_per_epoch = max(1, math.ceil(total_instances / cfg.batch_n))
    origin = np.concatenate([np.arange(cfg.batch_n), np.arange(cfg.batch_n)])
    step_size = cfg.learning_rate / (2 * cfg.batch_n)

    logger.info(
        f"Starting pretraining: {json.dumps(logger_serialize({'mode': cfg.mode, 'instances': total_instances, 'steps_per_epoch': steps_per_epoch, 'epochs': cfg.epochs}))}"
    )

    loss_log = []
    for epoch in range(1, cfg.epochs + 1):
        sums = np.zeros(4)
        for step in range(steps_per_epoch):
            idx = streams["shuffle"].generator.integers(0, total_instances, size=cfg.batch_n)
            view_a, view_b = augment_two_views(instances[idx], aug, streams["augmentation"])
            labels = np.concatenate([instance_labels[idx], instance_labels[idx]])
            _, z = encode_project(np.concatenate([view_a, view_b], axis=0), params, enc, proj)
            batch = ContrastiveBatch(z, origin, labels, pseudo_label=labels if cfg.mode == "supcon" else None)

            parts = mode_loss(batch, cfg)
            grads = backward(parts.total, leaves=leaves, graph=build_graph(parts.total))
            for leaf in leaves:
                leaf.data = leaf.data - step_size * grads[leaf]

            sums += (parts.total.item(), parts.similarity_part.item(), parts.simclr_part.item(), feature_variance(z.data))
            logger.debug(f"epoch {epoch} step {step}: total={parts.total.item():.6f}")

        means = sums / steps_per_epoch
        loss_log.append(LossLogEntry(epoch, float(means[0]), float(means[1]), float(means[2]), float(means[3])))
        logger.info(f"Pretrain epoch {epoch}/{cfg.epochs}: {json.dumps(logger_serialize(vars(loss_log[-1])))}")

    checkpoint = Checkpoint(
        architecture=architecture_of(enc, proj),
        seed=cfg.seed,
        epoch=cfg.epochs,
        params={name: t.data.copy() for name, t in params.items()},
        provenance={
            "loss_mode": cfg.mode,
            "config_hash": run_config_hash or config_hash({"pretrain": cfg, "encoder": enc, "projection": proj, "augmentation": aug}),
        },
    )
    return PretrainResult(checkpoint=checkpoint, loss_log=loss_log)
