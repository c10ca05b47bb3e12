import logging
from dataclasses import replace

from weaksupcon.analysis.diagnostics import loss_plateau
from weaksupcon.cli.checkpoint_io import save_checkpoint
from weaksupcon.cli.csv_reports import write_loss_log
from weaksupcon.cli.layout import data_path, pretrain_dir, require
from weaksupcon.mildata.feature_store import read_feature_store
from weaksupcon.representation.pretrain import pretrain

# Configure logging
logger = logging.getLogger(__name__)


def run_pretrain(cfg):
    """
    Pretrain one encoder per repeat seed on the training split.

    Returns:
        list: Checkpoint and loss-log paths
    """
    train_bags = read_feature_store(require(data_path(cfg.output_dir, "train"), "gen-data"))
    artifacts = []
    for seed in cfg.pretrain_seeds():
        result = pretrain(train_bags, replace(cfg.pretrain, seed=seed), cfg.encoder, cfg.projection, cfg.augmentation, run_config_hash=cfg.hash())
        if loss_plateau(result.loss_log):
            logger.warning(f"Pretraining loss for seed {seed} stayed flat over the first epochs")
        directory = pretrain_dir(cfg.output_dir, seed)
        artifacts.append(save_checkpoint(directory / "checkpoint.wsck", result.checkpoint))
        artifacts.append(write_loss_log(directory / "loss_log.csv", result.loss_log))
    return artifacts
