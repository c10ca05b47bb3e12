import logging

from weaksupcon.cli.checkpoint_io import load_checkpoint
from weaksupcon.cli.layout import SPLITS, data_path, features_path, pretrain_dir, require
from weaksupcon.mildata.feature_store import read_feature_store, write_feature_store
from weaksupcon.representation.encode_project import architecture_of
from weaksupcon.representation.extract_features import extract_features

# Configure logging
logger = logging.getLogger(__name__)


def run_extract(cfg):
    """Embed every split with each repeat's frozen encoder."""
    splits = {name: read_feature_store(require(data_path(cfg.output_dir, name), "gen-data")) for name in SPLITS}
    architecture = architecture_of(cfg.encoder, cfg.projection)
    artifacts = []
    for seed in cfg.pretrain_seeds():
        checkpoint = load_checkpoint(
            require(pretrain_dir(cfg.output_dir, seed) / "checkpoint.wsck", "pretrain"),
            expected_architecture=architecture,
            expected_config_hash=cfg.hash(),
        )
        for name, bags in splits.items():
            features = extract_features(bags, checkpoint)
            artifacts.append(write_feature_store(features, features_path(cfg.output_dir, seed, name), dim=cfg.mil.input_dim))
    return artifacts
