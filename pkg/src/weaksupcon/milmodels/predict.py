import numpy as np

from weaksupcon.common.errors import ArchitectureError
from weaksupcon.milmodels.dtfd import dtfd_forward
from weaksupcon.milmodels.pooling import abmil_forward, max_pool_forward, mean_pool_forward
from weaksupcon.milmodels.spec import BagPrediction, MILModelSpec
from weaksupcon.numcore.rng import derive_rng
from weaksupcon.numcore.tensor import Tensor

DTFD_EVAL_SPLITS = 8


def forward_bag(spec, params, features, bag_id, rng=None):
    """Dispatch to the aggregator named by spec.kind."""
    if spec.kind == "mean":
        return mean_pool_forward(features, params, bag_id)
    if spec.kind == "max":
        return max_pool_forward(features, params, bag_id)
    if spec.kind == "abmil":
        return abmil_forward(features, params, bag_id)
    return dtfd_forward(features, params, spec.num_pseudo_bags, rng, bag_id=bag_id)


def _dtfd_prediction(spec, params, bag, seed, splits):
    forwards = [
        forward_bag(spec, params, bag.instances, bag.id, derive_rng(seed, "dtfd-eval", bag.id, k))
        for k in range(splits)
    ]
    return BagPrediction(
        bag_id=bag.id,
        score=float(np.mean([f.score for f in forwards])),
        attention=np.mean([f.instance_attention for f in forwards], axis=0),
    )


def predict_bags(spec, params, bags, seed, splits=DTFD_EVAL_SPLITS):
    """
    Scores for every bag. A dtfd score (and its instance attention) is the
    mean over `splits` pseudo-bag splits, split k drawn from the
    (seed, "dtfd-eval", bag id, k) stream.

    Returns:
        list: BagPrediction per bag, in input order
    """
    if spec.kind == "dtfd":
        return [_dtfd_prediction(spec, params, bag, seed, splits) for bag in bags]
    return [forward_bag(spec, params, bag.instances, bag.id).prediction() for bag in bags]


def mil_architecture(spec):
    return {
        "model": "mil",
        "kind": spec.kind,
        "input_dim": spec.input_dim,
        "attention_dim": spec.attention_dim,
        "num_pseudo_bags": spec.num_pseudo_bags,
        "classifier_widths": list(spec.classifier_widths),
    }


def mil_model_from_checkpoint(checkpoint):
    architecture = checkpoint.architecture
    if architecture.get("model") != "mil":
        raise ArchitectureError(f"expected a mil checkpoint, got {architecture.get('model')!r}", architecture=architecture)
    spec = MILModelSpec(
        kind=architecture["kind"],
        input_dim=architecture["input_dim"],
        attention_dim=architecture["attention_dim"],
        num_pseudo_bags=architecture["num_pseudo_bags"],
        classifier_widths=tuple(architecture["classifier_widths"]),
    )
    return spec, {name: Tensor(value) for name, value in checkpoint.param_arrays().items()}
