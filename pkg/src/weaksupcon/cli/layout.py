"""Where each command reads and writes inside the run directory."""

from pathlib import Path

from weaksupcon.common.errors import DataError

SPLITS = ("train", "val", "test")


def data_path(out, split):
    return Path(out) / "data" / f"{split}.wscf"


def pretrain_dir(out, seed):
    return Path(out) / "pretrain" / f"seed{seed}"


def features_path(out, seed, split):
    return Path(out) / "features" / f"seed{seed}" / f"{split}.wscf"


def mil_dir(out, seed):
    return Path(out) / "mil" / f"seed{seed}"


def metrics_path(out, kind):
    return Path(out) / "eval" / f"metrics_{kind}.csv"


def witness_attention_path(out, kind):
    return Path(out) / "eval" / f"witness_attention_{kind}.csv"


def analysis_dir(out, seed):
    return Path(out) / "analysis" / f"seed{seed}"


def require(path, producer):
    """Fail with an actionable message when an input artifact is missing."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"missing input {path}; run `{producer}` first", path=str(path))
    return path
