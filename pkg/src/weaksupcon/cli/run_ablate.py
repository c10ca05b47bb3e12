import logging
from dataclasses import replace
from pathlib import Path

from weaksupcon.cli.csv_reports import write_csv
from weaksupcon.cli.gen_data import gen_data
from weaksupcon.cli.run_eval import METRIC_COLUMNS, aggregate_rows, evaluate_repeats, run_eval
from weaksupcon.cli.run_extract import run_extract
from weaksupcon.cli.run_pretrain import run_pretrain
from weaksupcon.cli.run_train_mil import run_train_mil

# Configure logging
logger = logging.getLogger(__name__)

ABLATION_ALPHAS = (0.25, 1.0, 4.0)


def alpha_config(cfg, alpha):
    """WeakSupCon config for one Similarity Loss weight, in its own sub-directory."""
    return replace(
        cfg,
        pretrain=replace(cfg.pretrain, mode="weaksupcon", loss=replace(cfg.pretrain.loss, alpha=alpha)),
        output_dir=str(Path(cfg.output_dir) / "ablation" / f"alpha_{alpha}"),
    )


def run_ablate(cfg, alphas=ABLATION_ALPHAS):
    """
    Full pipeline per alpha, then one summary row per alpha.

    Returns:
        list: Every artifact written, ablation.csv last
    """
    artifacts = []
    rows = []
    for alpha in alphas:
        sub = alpha_config(cfg, alpha)
        logger.info(f"Ablation alpha={alpha} -> {sub.output_dir}")
        for step in (gen_data, run_pretrain, run_extract, run_train_mil, run_eval):
            artifacts.extend(step(sub))
        model, results, _ = evaluate_repeats(sub)
        mean_row, std_row = aggregate_rows(model, [report for _, report in results])
        rows.append([alpha, model, *mean_row[2:], *std_row[2:]])

    header = ["alpha", "model", *METRIC_COLUMNS, *(f"{c}_std" for c in METRIC_COLUMNS)]
    artifacts.append(write_csv(Path(cfg.output_dir) / "ablation.csv", header, rows))
    return artifacts
