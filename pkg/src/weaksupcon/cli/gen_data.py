import logging

from weaksupcon.cli.layout import data_path
from weaksupcon.mildata.feature_store import write_feature_store
from weaksupcon.mildata.generate_synthetic import generate_synthetic

# Configure logging
logger = logging.getLogger(__name__)


def gen_data(cfg):
    """
    Generate the synthetic benchmark and store one file per split.

    Args:
        cfg (RunConfig): Resolved run configuration

    Returns:
        list: Written artifact paths
    """
    split = generate_synthetic(cfg.data)
    artifacts = [write_feature_store(bags, data_path(cfg.output_dir, name), dim=cfg.data.d) for name, bags in split.items()]
    logger.info(f"Generated {len(split.all_bags())} bags with seed {cfg.data.seed}")
    return artifacts
