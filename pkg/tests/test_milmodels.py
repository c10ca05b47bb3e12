import math

import numpy as np
import pytest

from weaksupcon.common.checkpoint import Checkpoint
from weaksupcon.common.errors import ArchitectureError, ConfigError, DataError
from weaksupcon.mildata.bag import Bag, SyntheticSpec
from weaksupcon.mildata.generate_synthetic import generate_synthetic
from weaksupcon.milmodels import (
    MILModelSpec,
    MILTrainConfig,
    abmil_forward,
    bce_with_logits,
    dtfd_forward,
    dtfd_split,
    init_mil_params,
    max_pool_forward,
    mean_pool_forward,
    mil_loss,
    mil_model_from_checkpoint,
    predict_bags,
    split_indices,
    train_mil,
)
from weaksupcon.milmodels.heads import classify
from weaksupcon.milmodels.predict import mil_architecture
from weaksupcon.milmodels.train_mil import clip_gradients
from weaksupcon.numcore.gradcheck import finite_diff_check
from weaksupcon.numcore.rng import Rng, derive_rng
from weaksupcon.numcore.tensor import Tensor, backward

D = 4


def params_for(kind, seed=0, widths=()):
    spec = MILModelSpec(kind=kind, input_dim=D, attention_dim=3, num_pseudo_bags=3, classifier_widths=widths)
    return spec, init_mil_params(spec, Rng(seed, "init"))


def test_bce_with_logits_at_zero():
    assert bce_with_logits(Tensor([[0.0]]), 1).item() == pytest.approx(math.log(2.0))


def test_mean_pool_identical_instances(np_rng):
    _, params = params_for("mean")
    row = np_rng.normal(size=(1, D))
    assert mean_pool_forward(np.repeat(row, 5, axis=0), params).score == pytest.approx(mean_pool_forward(row, params).score, abs=1e-12)


def test_mean_pool_single_instance_is_direct_classification(np_rng):
    _, params = params_for("mean", widths=(3,))
    row = np_rng.normal(size=(1, D))
    assert mean_pool_forward(row, params).logit.item() == pytest.approx(classify(Tensor(row), params).item(), abs=1e-15)


def test_max_pool_picks_highest_instance(np_rng):
    _, params = params_for("max")
    x = np_rng.normal(size=(6, D))
    instance_logits = classify(Tensor(x), params).data[:, 0]
    assert max_pool_forward(x, params).logit.item() == pytest.approx(instance_logits.max(), abs=1e-15)


def test_max_pool_duplicate_argmax_routes_gradient_to_first_copy(np_rng):
    _, params = params_for("max")
    x = np_rng.normal(size=(5, D))
    top = int(np.argmax(classify(Tensor(x), params).data[:, 0]))
    duplicated = Tensor(np.vstack([x, x[top]]), requires_grad=True)
    forward = max_pool_forward(duplicated, params)
    assert forward.score == pytest.approx(max_pool_forward(x, params).score, abs=1e-15)
    grad = backward(mil_loss(forward, 1), leaves=[duplicated])[duplicated]
    assert np.any(grad[top] != 0.0)
    assert not np.any(np.delete(grad, top, axis=0))


def test_abmil_uniform_attention_on_identical_instances(np_rng):
    _, params = params_for("abmil")
    forward = abmil_forward(np.repeat(np_rng.normal(size=(1, D)), 4, axis=0), params)
    np.testing.assert_allclose(forward.attention.data[:, 0], 0.25, atol=1e-12)


def test_abmil_single_instance_attention(np_rng):
    _, params = params_for("abmil")
    np.testing.assert_allclose(abmil_forward(np_rng.normal(size=(1, D)), params).attention.data, [[1.0]])


def test_abmil_attention_sums_to_one_and_gradients(np_rng):
    _, params = params_for("abmil", widths=(3,))
    for _ in range(20):
        x = np_rng.normal(size=(7, D))
        assert abmil_forward(x, params).attention.data.sum() == pytest.approx(1.0, abs=1e-9)
        assert finite_diff_check(lambda t: mil_loss(abmil_forward(t, params), 1), x) < 1e-6
    for name in ("attention.V.weight", "attention.w.bias", "classifier.0.weight"):
        def loss(t, name=name):
            return mil_loss(abmil_forward(x, {**params, name: t}), 0)
        assert finite_diff_check(loss, params[name].data) < 1e-6


@pytest.mark.parametrize("kind", ["mean", "max", "abmil"])
def test_aggregators_are_permutation_invariant(kind, np_rng):
    _, params = params_for(kind)
    x = np_rng.normal(size=(9, D))
    perm = np_rng.permutation(9)
    forward = {"mean": mean_pool_forward, "max": max_pool_forward, "abmil": abmil_forward}[kind]
    assert forward(x[perm], params).score == pytest.approx(forward(x, params).score, abs=1e-12)


def test_dtfd_invariant_under_consistent_permutation(np_rng):
    _, params = params_for("dtfd")
    x = np_rng.normal(size=(9, D))
    groups = split_indices(9, 3, Rng(1, "split"))
    perm = np_rng.permutation(9)
    inverse = np.argsort(perm)
    moved = [np.sort(inverse[g]) for g in groups]
    original = dtfd_forward(x, params, 3, None, groups=groups).score
    assert dtfd_forward(x[perm], params, 3, None, groups=moved).score == pytest.approx(original, abs=1e-12)


def test_dtfd_split_even():
    bag = Bag(id=4, label=1, instances=np.arange(20.0).reshape(10, 2), witness_mask=np.eye(10, dtype=bool)[0])
    pseudo = dtfd_split(bag, 2, Rng(0, "split"))
    assert [p.indices.size for p in pseudo] == [5, 5]
    assert not set(pseudo[0].indices) & set(pseudo[1].indices)
    assert all(p.label == 1 and p.parent_id == 4 for p in pseudo)


def test_dtfd_split_balanced():
    bag = Bag(id=0, label=0, instances=np.zeros((10, 2)))
    assert sorted(p.indices.size for p in dtfd_split(bag, 3, Rng(0, "split"))) == [3, 3, 4]


def test_dtfd_split_partitions_random_cases(np_rng):
    for case in range(1000):
        n = int(np_rng.integers(2, 60))
        m = int(np_rng.integers(2, n + 1))
        groups = split_indices(n, m, Rng(case, "split"))
        sizes = [g.size for g in groups]
        assert len(groups) == m
        assert max(sizes) - min(sizes) <= 1
        np.testing.assert_array_equal(np.sort(np.concatenate(groups)), np.arange(n))


def test_dtfd_split_needs_enough_instances():
    with pytest.raises(DataError):
        split_indices(2, 3, Rng(0, "split"))


def test_dtfd_needs_two_pseudo_bags():
    with pytest.raises(ConfigError):
        MILModelSpec(kind="dtfd", num_pseudo_bags=1)


def test_dtfd_uniform_tier2_attention_on_identical_instances(np_rng):
    _, params = params_for("dtfd")
    forward = dtfd_forward(np.repeat(np_rng.normal(size=(1, D)), 9, axis=0), params, 3, Rng(0, "split"))
    np.testing.assert_allclose(forward.attention.data[:, 0], 1.0 / 3.0, atol=1e-12)
    assert len(forward.pseudo_logits) == 3
    assert forward.instance_attention.sum() == pytest.approx(1.0, abs=1e-12)


def test_dtfd_combined_loss_gradient(np_rng):
    _, params = params_for("dtfd")
    for case in range(20):
        x = np_rng.normal(size=(8, D))
        groups = split_indices(8, 3, Rng(case, "split"))
        assert finite_diff_check(lambda t: mil_loss(dtfd_forward(t, params, 3, None, groups=groups), 1), x) < 1e-6


def test_predict_bags_is_repeatable(np_rng):
    spec, params = params_for("dtfd")
    bags = [Bag(id=k, label=0, instances=np_rng.normal(size=(7, D))) for k in range(3)]
    first = [p.score for p in predict_bags(spec, params, bags, seed=9)]
    second = [p.score for p in predict_bags(spec, params, bags, seed=9)]
    assert first == second


def test_dtfd_prediction_averages_splits(np_rng):
    spec, params = params_for("dtfd")
    bag = Bag(id=4, label=1, instances=np_rng.normal(size=(9, D)))
    forwards = [dtfd_forward(bag.instances, params, 3, derive_rng(9, "dtfd-eval", 4, k), bag_id=4) for k in range(3)]
    (prediction,) = predict_bags(spec, params, [bag], seed=9, splits=3)
    assert prediction.score == pytest.approx(np.mean([f.score for f in forwards]), abs=1e-15)
    assert prediction.attention.min() >= 0.0
    assert prediction.attention.sum() == pytest.approx(1.0, abs=1e-9)


def test_clip_gradients_bounds_global_norm():
    a, b = Tensor(np.zeros(2)), Tensor(np.zeros(3))
    grads = {a: np.array([3.0, 0.0]), b: np.array([0.0, 4.0, 0.0])}
    assert clip_gradients(grads, [a, b], 0.0) == pytest.approx(5.0)
    np.testing.assert_array_equal(grads[b], [0.0, 4.0, 0.0])
    assert clip_gradients(grads, [a, b], 1.0) == pytest.approx(5.0)
    np.testing.assert_allclose(grads[a], [0.6, 0.0])
    np.testing.assert_allclose(grads[b], [0.0, 0.8, 0.0])


def test_mil_config_rejects_negative_clip():
    with pytest.raises(ConfigError):
        MILTrainConfig(grad_clip=-1.0)


def test_checkpoint_rebuilds_model():
    spec, params = params_for("abmil", widths=(2,))
    checkpoint = Checkpoint(architecture=mil_architecture(spec), seed=0, epoch=1, params={k: t.data for k, t in params.items()})
    rebuilt, rebuilt_params = mil_model_from_checkpoint(checkpoint)
    assert rebuilt == spec
    assert list(rebuilt_params) == list(params)
    with pytest.raises(ArchitectureError):
        mil_model_from_checkpoint(Checkpoint(architecture={"model": "encoder_projection"}, seed=0, epoch=0))


def _separable_split(seed=1):
    spec = SyntheticSpec(
        d=D, neg_clusters=1, pos_clusters=1, cluster_separation=10.0, witness_rate=0.2, bag_size_range=(5, 8), counts=(10, 10, 5, 5, 1, 1), seed=seed
    )
    return generate_synthetic(spec)


def test_zero_learning_rate_keeps_initialization():
    split = _separable_split()
    spec = MILModelSpec(kind="abmil", input_dim=D, attention_dim=3)
    result = train_mil(split.train, split.val, spec, MILTrainConfig(epochs=3, learning_rate=0.0, seed=2))
    assert result.best_epoch == 1
    for name, value in result.initial_params.items():
        np.testing.assert_array_equal(result.checkpoint.params[name], value)
    assert [r.epoch for r in result.history] == [1, 2, 3]
    assert result.checkpoint.provenance["loss_mode"] == "bce"


def test_abmil_learns_separable_bags():
    split = _separable_split()
    spec = MILModelSpec(kind="abmil", input_dim=D, attention_dim=3)
    result = train_mil(split.train, split.val, spec, MILTrainConfig(epochs=50, learning_rate=0.05, seed=2))
    assert max(r.val_auc for r in result.history) == 1.0
    assert result.history[result.best_epoch - 1].val_auc == 1.0


def test_train_mil_needs_both_validation_labels():
    split = _separable_split()
    negatives = [bag for bag in split.val if bag.label == 0]
    with pytest.raises(DataError):
        train_mil(split.train, negatives, MILModelSpec(input_dim=D), MILTrainConfig(epochs=1))


def test_clipped_training_bounds_parameter_drift():
    split = _separable_split()
    spec = MILModelSpec(kind="dtfd", input_dim=D, attention_dim=3, num_pseudo_bags=2)
    result = train_mil(split.train, split.val, spec, MILTrainConfig(epochs=1, learning_rate=1.0, seed=2, grad_clip=1e-3))
    drift = np.sqrt(sum(np.sum((result.checkpoint.params[name] - value) ** 2) for name, value in result.initial_params.items()))
    assert 0.0 < drift <= len(split.train) * 1e-3 + 1e-12
