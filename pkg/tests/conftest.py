import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from weaksupcon.cli.config import RunConfig  # noqa: E402
from weaksupcon.losses.config import ContrastiveBatch  # noqa: E402
from weaksupcon.mildata.bag import SyntheticSpec  # noqa: E402
from weaksupcon.milmodels.spec import MILModelSpec, MILTrainConfig  # noqa: E402
from weaksupcon.representation.specs import EncoderSpec, PretrainConfig, ProjectionSpec  # noqa: E402


def paired_batch(z, labels_per_origin, pseudo_labels=None):
    """Views laid out as [origin 0..N-1, origin 0..N-1]."""
    n = len(labels_per_origin)
    origin = np.concatenate([np.arange(n), np.arange(n)])
    labels = np.concatenate([labels_per_origin, labels_per_origin])
    pseudo = None if pseudo_labels is None else np.concatenate([pseudo_labels, pseudo_labels])
    return ContrastiveBatch(z, origin, labels, pseudo_label=pseudo)


@pytest.fixture
def np_rng():
    return np.random.default_rng(12345)


@pytest.fixture
def tiny_spec():
    return SyntheticSpec(d=8, counts=(4, 4, 2, 2, 2, 2), bag_size_range=(6, 10), seed=3)


@pytest.fixture
def tiny_run_config(tmp_path, tiny_spec):
    return RunConfig(
        data=tiny_spec,
        pretrain=PretrainConfig(batch_n=16, epochs=2, learning_rate=0.05, seed=11),
        encoder=EncoderSpec(layer_widths=(8, 16, 8)),
        projection=ProjectionSpec(hidden_width=8, output_width=4),
        mil=MILModelSpec(kind="abmil", input_dim=8, attention_dim=4),
        mil_train=MILTrainConfig(epochs=2, learning_rate=0.01, seed=5),
        repeats=2,
        output_dir=str(tmp_path / "run"),
    )


def tiny_config_document(out):
    """The tiny_run_config fixture as a JSON document."""
    return {
        "data": {"d": 8, "counts": [4, 4, 2, 2, 2, 2], "bag_size_range": [6, 10], "seed": 3},
        "pretrain": {"batch_n": 16, "epochs": 2, "seed": 11},
        "encoder": {"layer_widths": [8, 16, 8]},
        "projection": {"hidden_width": 8, "output_width": 4},
        "mil": {"kind": "abmil", "input_dim": 8, "attention_dim": 4},
        "mil_train": {"epochs": 2, "seed": 5},
        "repeats": 2,
        "output_dir": str(out),
    }
