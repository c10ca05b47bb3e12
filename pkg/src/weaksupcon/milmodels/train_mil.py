import json
import logging
from dataclasses import dataclass, field

import numpy as np

from weaksupcon.analysis.metrics import roc_auc
from weaksupcon.common.checkpoint import Checkpoint
from weaksupcon.common.errors import DataError, ShapeError
from weaksupcon.common.hashing import config_hash
from weaksupcon.common.logger_serialize import logger_serialize
from weaksupcon.milmodels.heads import init_mil_params, mil_loss
from weaksupcon.milmodels.predict import forward_bag, mil_architecture, predict_bags
from weaksupcon.numcore.rng import derive_rng, rng_streams
from weaksupcon.numcore.tensor import backward

# Configure logging
logger = logging.getLogger(__name__)


@dataclass
class EpochRecord:
    epoch: int
    train_loss: float
    val_auc: float


@dataclass
class MILTrainResult:
    checkpoint: Checkpoint
    history: list = field(default_factory=list)
    best_epoch: int = 0
    initial_params: dict = field(default_factory=dict)


def _validate(train_bags, val_bags, spec):
    if not train_bags or not val_bags:
        raise DataError("train_mil needs non-empty train and validation bags")
    if len({bag.label for bag in val_bags}) < 2:
        raise DataError("validation bags must contain both labels (AUC is undefined otherwise)")
    for bag in list(train_bags) + list(val_bags):
        if bag.instances.shape[1] != spec.input_dim:
            raise ShapeError("train_mil", bag.instances.shape, (None, spec.input_dim))


def clip_gradients(grads, leaves, max_norm):
    """
    Rescale grads in place so their global L2 norm is at most max_norm.

    Returns:
        float: Norm before clipping
    """
    norm = float(np.sqrt(sum(np.sum(grads[leaf] ** 2) for leaf in leaves)))
    if max_norm > 0 and norm > max_norm:
        factor = max_norm / norm
        for leaf in leaves:
            grads[leaf] = grads[leaf] * factor
    return norm


def train_mil(train_bags, val_bags, spec, cfg, run_config_hash=None):
    """
    Fit an aggregator with one SGD step per bag and keep the epoch with the
    best validation AUC (earliest on ties). Each step's gradient is clipped to
    cfg.grad_clip in global norm.

    Args:
        train_bags (list): Feature bags for training
        val_bags (list): Feature bags for model selection, both labels present
        spec (MILModelSpec): Aggregator
        cfg (MILTrainConfig): Epochs, learning rate, seed, gradient clip
        run_config_hash (str): Provenance hash for the checkpoint

    Returns:
        MILTrainResult: Selected checkpoint and per-epoch history
    """
    _validate(train_bags, val_bags, spec)
    params = init_mil_params(spec, rng_streams(cfg.seed)["init"])
    leaves = list(params.values())
    initial = {name: t.data.copy() for name, t in params.items()}
    val_labels = np.array([bag.label for bag in val_bags])

    best_auc, best_epoch, best_params = -np.inf, 0, initial
    history = []
    for epoch in range(1, cfg.epochs + 1):
        order = derive_rng(cfg.seed, "mil-shuffle", epoch).generator.permutation(len(train_bags))
        losses = []
        for position in order:
            bag = train_bags[position]
            forward = forward_bag(spec, params, bag.instances, bag.id, derive_rng(cfg.seed, "dtfd", epoch, bag.id))
            loss = mil_loss(forward, bag.label)
            grads = backward(loss, leaves=leaves)
            clip_gradients(grads, leaves, cfg.grad_clip)
            for leaf in leaves:
                leaf.data = leaf.data - cfg.learning_rate * grads[leaf]
            losses.append(loss.item())

        scores = [p.score for p in predict_bags(spec, params, val_bags, cfg.seed)]
        val_auc = roc_auc(scores, val_labels)
        history.append(EpochRecord(epoch=epoch, train_loss=float(np.mean(losses)), val_auc=val_auc))
        if val_auc > best_auc:
            best_auc, best_epoch = val_auc, epoch
            best_params = {name: t.data.copy() for name, t in params.items()}
        logger.info(f"MIL epoch {epoch}/{cfg.epochs}: {json.dumps(logger_serialize(vars(history[-1])))}")

    logger.info(f"Selected epoch {best_epoch} with validation AUC {best_auc:.4f}")
    checkpoint = Checkpoint(
        architecture=mil_architecture(spec),
        seed=cfg.seed,
        epoch=best_epoch,
        params=best_params,
        provenance={"loss_mode": "bce", "config_hash": run_config_hash or config_hash({"mil": spec, "mil_train": cfg})},
    )
    return MILTrainResult(checkpoint=checkpoint, history=history, best_epoch=best_epoch, initial_params=initial)
