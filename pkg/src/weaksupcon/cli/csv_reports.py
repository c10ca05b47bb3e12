import csv
import logging
from pathlib import Path

# Configure logging
logger = logging.getLogger(__name__)


def format_cell(value):
    """Floats with 17 significant digits so they round-trip exactly."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path, header, rows):
    """
    Write a UTF-8 CSV with a header row.

    Args:
        path (str | Path): Output file
        header (list): Column names
        rows (iterable): Row sequences aligned with header

    Returns:
        Path: The written file
    """
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_cell(v) for v in row])
        return path

    except Exception as e:
        logger.error(f"Error writing {path}: {str(e)}")
        raise


def read_csv(path):
    with Path(path).open(encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


def write_loss_log(path, loss_log):
    return write_csv(
        path,
        ["epoch", "total", "similarity_part", "simclr_part", "feature_variance"],
        [(e.epoch, e.total, e.similarity_part, e.simclr_part, e.feature_variance) for e in loss_log],
    )


def write_validation_log(path, history):
    return write_csv(path, ["epoch", "train_loss", "val_auc"], [(r.epoch, r.train_loss, r.val_auc) for r in history])


def write_histogram(path, edges, counts):
    return write_csv(
        path,
        ["bin_left", "bin_right", "count"],
        [(float(edges[k]), float(edges[k + 1]), int(c)) for k, c in enumerate(counts)],
    )


def write_pca(path, points):
    return write_csv(path, ["x", "y", "group"], points)
