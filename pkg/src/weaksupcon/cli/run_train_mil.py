import logging
from dataclasses import replace

from weaksupcon.cli.checkpoint_io import save_checkpoint
from weaksupcon.cli.csv_reports import write_validation_log
from weaksupcon.cli.layout import features_path, mil_dir, require
from weaksupcon.mildata.feature_store import read_feature_store
from weaksupcon.milmodels.train_mil import train_mil

# Configure logging
logger = logging.getLogger(__name__)


def run_train_mil(cfg):
    """
    Train the configured aggregator on each repeat's frozen features.

    Repeat r uses pretrain seed pretrain.seed + r and MIL seed mil_train.seed + r.
    """
    kind = cfg.mil.kind
    artifacts = []
    for pretrain_seed, mil_seed in zip(cfg.pretrain_seeds(), cfg.mil_seeds()):
        train_bags = read_feature_store(require(features_path(cfg.output_dir, pretrain_seed, "train"), "extract"))
        val_bags = read_feature_store(require(features_path(cfg.output_dir, pretrain_seed, "val"), "extract"))
        result = train_mil(train_bags, val_bags, cfg.mil, replace(cfg.mil_train, seed=mil_seed), run_config_hash=cfg.hash())
        directory = mil_dir(cfg.output_dir, pretrain_seed)
        artifacts.append(save_checkpoint(directory / f"{kind}.wsck", result.checkpoint))
        artifacts.append(write_validation_log(directory / f"{kind}_validation.csv", result.history))
    return artifacts
