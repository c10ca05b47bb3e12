import logging

import numpy as np

from weaksupcon.analysis.diagnostics import witness_attention_share
from weaksupcon.analysis.metrics import evaluate_scores
from weaksupcon.cli.checkpoint_io import load_checkpoint
from weaksupcon.cli.csv_reports import write_csv
from weaksupcon.cli.layout import features_path, metrics_path, mil_dir, require, witness_attention_path
from weaksupcon.mildata.feature_store import read_feature_store
from weaksupcon.milmodels.predict import mil_architecture, mil_model_from_checkpoint, predict_bags

# Configure logging
logger = logging.getLogger(__name__)

METRIC_COLUMNS = ("balanced_accuracy", "accuracy", "auc")
WITNESS_COLUMNS = ("witness_share", "witness_ratio")
ATTENTION_KINDS = ("abmil", "dtfd")


def aggregate_rows(model, reports):
    """Mean and sample standard deviation (n - 1) rows; std is nan for one repeat."""
    values = np.array([[getattr(r, c) for c in METRIC_COLUMNS] for r in reports], dtype=np.float64)
    mean = values.mean(axis=0)
    std = values.std(axis=0, ddof=1) if len(reports) > 1 else np.full(len(METRIC_COLUMNS), np.nan)
    return [[model, "mean", *map(float, mean)], [model, "std", *map(float, std)]]


def witness_summary(predictions, bags):
    """
    Mean attention share on ground-truth witnesses over positive bags that
    carry a witness mask, and the mean witness / non-witness weight ratio.

    Returns:
        tuple: (share, ratio); nan when no bag qualifies
    """
    shares, ratios = [], []
    for prediction, bag in zip(predictions, bags):
        if bag.label == 1 and bag.witness_mask is not None and prediction.attention is not None:
            share, ratio = witness_attention_share(prediction.attention, bag.witness_mask)
            shares.append(share)
            ratios.append(ratio)
    finite = [r for r in ratios if np.isfinite(r)]
    return (
        float(np.mean(shares)) if shares else float("nan"),
        float(np.mean(finite)) if finite else float("nan"),
    )


def evaluate_repeats(cfg):
    """
    Score the test split with each repeat's MIL checkpoint.

    Returns:
        tuple: (model name, list of (pretrain seed, MetricsReport), list of
            (pretrain seed, witness share, witness ratio) for attention heads)
    """
    kind = cfg.mil.kind
    model = f"{cfg.pretrain.mode}+{kind}"
    results, witness = [], []
    for pretrain_seed, mil_seed in zip(cfg.pretrain_seeds(), cfg.mil_seeds()):
        test_bags = read_feature_store(require(features_path(cfg.output_dir, pretrain_seed, "test"), "extract"))
        checkpoint = load_checkpoint(
            require(mil_dir(cfg.output_dir, pretrain_seed) / f"{kind}.wsck", "train-mil"),
            expected_architecture=mil_architecture(cfg.mil),
            expected_config_hash=cfg.hash(),
        )
        spec, params = mil_model_from_checkpoint(checkpoint)
        predictions = predict_bags(spec, params, test_bags, mil_seed)
        report = evaluate_scores([p.score for p in predictions], [bag.label for bag in test_bags])
        logger.info(f"{model} seed {pretrain_seed}: balanced accuracy {report.balanced_accuracy:.4f}, AUC {report.auc:.4f}")
        results.append((pretrain_seed, report))
        if kind in ATTENTION_KINDS:
            witness.append((pretrain_seed, *witness_summary(predictions, test_bags)))
    return model, results, witness


def run_eval(cfg):
    model, results, witness = evaluate_repeats(cfg)
    rows = [[model, seed, *(getattr(report, c) for c in METRIC_COLUMNS)] for seed, report in results]
    rows += aggregate_rows(model, [report for _, report in results])
    artifacts = [write_csv(metrics_path(cfg.output_dir, cfg.mil.kind), ["model", "seed", *METRIC_COLUMNS], rows)]
    if witness:
        witness_rows = [[model, *row] for row in witness]
        artifacts.append(write_csv(witness_attention_path(cfg.output_dir, cfg.mil.kind), ["model", "seed", *WITNESS_COLUMNS], witness_rows))
    return artifacts
