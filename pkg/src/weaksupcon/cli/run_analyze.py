"""
Feature-space diagnostics on the projected training features of each repeat:
densest-anchor cosines, their histogram, per-group fractions and a PCA view.
"""

import logging

import numpy as np

from weaksupcon.analysis.anchor import REPORT_THRESHOLDS, anchor_cosines, densest_anchor
from weaksupcon.analysis.diagnostics import feature_variance, group_fraction_above, mean_pairwise_cosine
from weaksupcon.analysis.histogram import cosine_histogram, histogram_edges
from weaksupcon.analysis.pca_spread import pca_spread
from weaksupcon.cli.checkpoint_io import load_checkpoint
from weaksupcon.cli.csv_reports import write_csv, write_histogram, write_pca
from weaksupcon.cli.layout import analysis_dir, data_path, pretrain_dir, require
from weaksupcon.mildata.bag import NEGATIVE
from weaksupcon.mildata.feature_store import read_feature_store
from weaksupcon.representation.encode_project import architecture_of
from weaksupcon.representation.extract_features import extract_features

# Configure logging
logger = logging.getLogger(__name__)

GROUP_NAMES = {NEGATIVE: "negative", 1: "positive"}


def analyze_features(features, groups):
    """
    Args:
        features (ndarray): Unit-norm projected features
        groups (ndarray): "negative" / "positive" per row

    Returns:
        dict: anchor report (computed over negative-bag rows), cosines of every
            row to the anchor, group fractions and the PCA spread
    """
    negative_rows = np.flatnonzero(groups == GROUP_NAMES[NEGATIVE])
    report = densest_anchor(features[negative_rows])
    anchor = features[negative_rows[report.anchor_index]]
    cosines = anchor_cosines(anchor, features)
    return {
        "anchor": report,
        "anchor_row": int(negative_rows[report.anchor_index]),
        "cosines": cosines,
        "fractions": group_fraction_above(cosines, groups, REPORT_THRESHOLDS),
        "pca": pca_spread(features, groups),
    }


def run_analyze(cfg):
    train_bags = read_feature_store(require(data_path(cfg.output_dir, "train"), "gen-data"))
    architecture = architecture_of(cfg.encoder, cfg.projection)
    artifacts = []
    for seed in cfg.pretrain_seeds():
        checkpoint = load_checkpoint(
            require(pretrain_dir(cfg.output_dir, seed) / "checkpoint.wsck", "pretrain"),
            expected_architecture=architecture,
            expected_config_hash=cfg.hash(),
        )
        projected = extract_features(train_bags, checkpoint, use_projection=True)
        features = np.concatenate([bag.instances for bag in projected], axis=0)
        groups = np.concatenate([[GROUP_NAMES[bag.label]] * bag.size for bag in projected])
        result = analyze_features(features, groups)
        anchor = result["anchor"]

        directory = analysis_dir(cfg.output_dir, seed)
        artifacts.append(
            write_csv(
                directory / "anchor.csv",
                ["anchor_row", "neighbor_count", "threshold", "feature_variance", "negative_mean_cosine"],
                [[
                    result["anchor_row"],
                    anchor.neighbor_count,
                    anchor.threshold,
                    feature_variance(features),
                    mean_pairwise_cosine(features[groups == GROUP_NAMES[NEGATIVE]]),
                ]],
            )
        )
        artifacts.append(write_histogram(directory / "histogram.csv", histogram_edges(), cosine_histogram(result["cosines"])))
        artifacts.append(
            write_csv(
                directory / "group_fractions.csv",
                ["group", "threshold", "fraction"],
                [[group, t, fraction] for group, by_threshold in result["fractions"].items() for t, fraction in by_threshold.items()],
            )
        )
        spread = result["pca"]
        artifacts.append(write_pca(directory / "pca.csv", spread.points))
        artifacts.append(
            write_csv(
                directory / "pca_ranges.csv",
                ["group", "pc1_range"],
                [[group, value] for group, value in spread.pc1_range.items()] + [["combined", spread.combined_range]],
            )
        )
        logger.info(f"Analysis for seed {seed}: anchor neighbors {anchor.neighbor_count}, fractions {result['fractions']}")
    return artifacts
