import math

import numpy as np
import pytest

from conftest import paired_batch
from weaksupcon.common.errors import BatchError, ConfigError, ZeroNormError
from weaksupcon.losses import (
    ContrastiveBatch,
    LossConfig,
    cosine_similarity,
    partition_views,
    similarity_loss,
    simclr_loss,
    simclr_pair_term,
    supcon_decomposition_check,
    supcon_loss,
    weaksupcon_loss,
)
from weaksupcon.numcore.gradcheck import finite_diff_check


def unit_rows(rng, n, d):
    z = rng.normal(size=(n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def naive_pair_term(z, i, j, tau, subset):
    denominator = sum(math.exp(z[i] @ z[k] / tau) for k in subset if k != i)
    return -math.log(math.exp(z[i] @ z[j] / tau) / denominator)


def naive_simclr(batch, subset, tau):
    z = batch.z.data
    return sum(naive_pair_term(z, i, batch.partner[i], tau, subset) for i in subset)


def naive_supcon(batch, tau):
    z = batch.z.data
    total = 0.0
    for i in range(len(batch)):
        others = [a for a in range(len(batch)) if a != i]
        positives = [p for p in others if batch.pseudo_label[p] == batch.pseudo_label[i]]
        denominator = sum(math.exp(z[i] @ z[a] / tau) for a in others)
        total += -1.0 / len(positives) * sum(math.log(math.exp(z[i] @ z[p] / tau) / denominator) for p in positives)
    return total


def naive_similarity(batch, tau):
    z = batch.z.data
    neg = [i for i in range(len(batch)) if batch.bag_label[i] == 0]
    return sum(-1.0 / len(neg) * sum(z[i] @ z[j] / tau for j in neg if j != i) for i in neg)


@pytest.mark.parametrize("u, v, expected", [([1, 0], [1, 0], 1.0), ([1, 0], [0, 1], 0.0), ([1, 1], [1, 0], 0.70710678)])
def test_cosine_similarity(u, v, expected):
    assert cosine_similarity(u, v) == pytest.approx(expected, abs=1e-8)


def test_cosine_similarity_zero_vector():
    with pytest.raises(ZeroNormError):
        cosine_similarity([0.0, 0.0], [1.0, 0.0])


def test_loss_config_validation():
    with pytest.raises(ConfigError):
        LossConfig(tau=0.0)
    with pytest.raises(ConfigError):
        LossConfig(alpha=-1.0)


def test_batch_rejects_unpaired_origin():
    with pytest.raises(BatchError):
        ContrastiveBatch(np.eye(3), [0, 0, 1], [0, 0, 1])


def test_batch_rejects_views_with_different_labels():
    with pytest.raises(BatchError):
        ContrastiveBatch(np.eye(4), [0, 1, 0, 1], [0, 1, 1, 1])


def test_batch_partner_and_partition():
    batch = paired_batch(np.eye(4), [0, 1])
    np.testing.assert_array_equal(batch.partner, [2, 3, 0, 1])
    neg, pos = partition_views(batch)
    np.testing.assert_array_equal(neg, [0, 2])
    np.testing.assert_array_equal(pos, [1, 3])


def test_single_pair_term_is_zero(np_rng):
    batch = paired_batch(unit_rows(np_rng, 2, 3), [1])
    assert simclr_pair_term(batch, 0, 1, LossConfig(tau=1.0)).item() == pytest.approx(0.0, abs=1e-12)


def test_identical_features_pair_term_is_ln3():
    batch = paired_batch(np.ones((4, 3)) / math.sqrt(3.0), [1, 1])
    assert simclr_pair_term(batch, 0, 2, LossConfig(tau=1.0)).item() == pytest.approx(math.log(3.0), abs=1e-9)


def test_pair_term_matches_naive(np_rng):
    batch = paired_batch(unit_rows(np_rng, 4, 5), [1, 1])
    expected = naive_pair_term(batch.z.data, 1, 3, 0.5, range(4))
    assert simclr_pair_term(batch, 1, 3, LossConfig(tau=0.5)).item() == pytest.approx(expected, abs=1e-10)


def test_pair_term_rejects_non_pair(np_rng):
    batch = paired_batch(unit_rows(np_rng, 4, 3), [1, 1])
    with pytest.raises(BatchError):
        simclr_pair_term(batch, 0, 1, LossConfig())


def test_simclr_empty_subset_is_zero(np_rng):
    batch = paired_batch(unit_rows(np_rng, 4, 3), [0, 0])
    assert simclr_loss(batch, [], LossConfig()).item() == 0.0


def test_simclr_one_origin_is_zero(np_rng):
    batch = paired_batch(unit_rows(np_rng, 6, 3), [1, 1, 1])
    assert simclr_loss(batch, [0, 3], LossConfig(tau=1.0)).item() == pytest.approx(0.0, abs=1e-12)


def test_simclr_subset_matches_naive(np_rng):
    batch = paired_batch(unit_rows(np_rng, 10, 4), [1, 1, 1, 0, 0])
    subset = [0, 1, 2, 5, 6, 7]
    expected = naive_simclr(batch, subset, 0.5)
    assert simclr_loss(batch, subset, LossConfig(tau=0.5)).item() == pytest.approx(expected, abs=1e-10)


def test_simclr_rejects_orphan_subset(np_rng):
    batch = paired_batch(unit_rows(np_rng, 4, 3), [1, 1])
    with pytest.raises(BatchError):
        simclr_loss(batch, [0, 1], LossConfig())


def test_supcon_unique_labels_equals_simclr(np_rng):
    batch = paired_batch(unit_rows(np_rng, 8, 5), [0, 1, 0, 1], pseudo_labels=[0, 1, 2, 3])
    cfg = LossConfig(tau=0.5)
    assert supcon_loss(batch, cfg).item() == pytest.approx(simclr_loss(batch, None, cfg).item(), abs=1e-9)


def test_supcon_identical_features_closed_form():
    batch = paired_batch(np.ones((8, 3)), [0, 0, 1, 1], pseudo_labels=[0, 0, 1, 1])
    assert supcon_loss(batch, LossConfig(tau=1.0)).item() == pytest.approx(8 * math.log(7.0), abs=1e-9)


def test_supcon_matches_naive(np_rng):
    batch = paired_batch(unit_rows(np_rng, 10, 4), [0, 0, 1, 1, 1], pseudo_labels=[0, 0, 1, 1, 1])
    assert supcon_loss(batch, LossConfig(tau=0.5)).item() == pytest.approx(naive_supcon(batch, 0.5), abs=1e-10)


def test_supcon_needs_pseudo_labels(np_rng):
    with pytest.raises(BatchError):
        supcon_loss(paired_batch(unit_rows(np_rng, 4, 3), [0, 1]), LossConfig())


def test_supcon_decomposition_random_batches(np_rng):
    cfg = LossConfig(tau=0.5)
    for _ in range(100):
        labels = np_rng.integers(0, 2, size=4)
        labels[:2] = (0, 1)
        batch = paired_batch(np_rng.normal(size=(8, 6)), labels, pseudo_labels=labels)
        assert supcon_decomposition_check(batch, cfg) < 1e-9


def test_supcon_decomposition_small_temperature(np_rng):
    cfg = LossConfig(tau=0.001)
    labels = np.array([0, 1, 0, 1])
    for _ in range(20):
        batch = paired_batch(np_rng.normal(size=(8, 5)), labels, pseudo_labels=labels)
        assert math.isfinite(supcon_loss(batch, cfg).item())
        assert supcon_decomposition_check(batch, cfg) < 1e-9


def test_supcon_decomposition_identical_features():
    batch = paired_batch(np.ones((6, 2)), [0, 0, 1], pseudo_labels=[0, 0, 1])
    assert supcon_decomposition_check(batch, LossConfig()) < 1e-9


def test_similarity_identical_unit_features():
    batch = paired_batch(np.tile([[0.6, 0.8]], (4, 1)), [0, 0])
    assert similarity_loss(batch, LossConfig(tau=0.5)).item() == pytest.approx(-6.0, abs=1e-9)


def test_similarity_orthogonal_features():
    batch = paired_batch(np.eye(4), [0, 0])
    assert similarity_loss(batch, LossConfig(tau=0.5)).item() == pytest.approx(0.0, abs=1e-12)


def test_similarity_without_negatives_is_zero(np_rng):
    batch = paired_batch(unit_rows(np_rng, 4, 3), [1, 1])
    assert similarity_loss(batch, LossConfig()).item() == 0.0


def test_similarity_matches_naive(np_rng):
    batch = paired_batch(unit_rows(np_rng, 8, 5), [0, 0, 0, 1])
    assert similarity_loss(batch, LossConfig(tau=1.0)).item() == pytest.approx(naive_similarity(batch, 1.0), abs=1e-10)


def test_weaksupcon_alpha_zero_is_positive_simclr(np_rng):
    batch = paired_batch(unit_rows(np_rng, 8, 4), [0, 0, 1, 1])
    cfg = LossConfig(alpha=0.0)
    _, pos = partition_views(batch)
    assert weaksupcon_loss(batch, cfg).total.item() == simclr_loss(batch, pos, cfg).item()


def test_weaksupcon_is_affine_in_alpha(np_rng):
    batch = paired_batch(unit_rows(np_rng, 12, 5), [0, 0, 0, 1, 1, 1])
    base = weaksupcon_loss(batch, LossConfig(alpha=0.0)).total.item()
    for alpha in (0.25, 1.0, 4.0):
        parts = weaksupcon_loss(batch, LossConfig(alpha=alpha))
        assert parts.total.item() - base == pytest.approx(alpha * parts.similarity_part.item(), abs=1e-9)


def test_simclr_weight_zero_keeps_parts(np_rng):
    batch = paired_batch(unit_rows(np_rng, 8, 4), [0, 0, 1, 1])
    parts = weaksupcon_loss(batch, LossConfig(simclr_weight=0.0))
    assert parts.total.item() == pytest.approx(parts.similarity_part.item(), abs=1e-12)
    assert parts.simclr_part.item() > 0.0


def test_losses_invariant_to_view_permutation(np_rng):
    labels = np.array([0, 0, 1, 1, 1])
    z = np_rng.normal(size=(10, 4))
    batch = paired_batch(z, labels, pseudo_labels=labels)
    perm = np_rng.permutation(10)
    shuffled = ContrastiveBatch(z[perm], batch.origin[perm], batch.bag_label[perm], pseudo_label=batch.pseudo_label[perm])
    cfg = LossConfig(tau=0.5)
    for loss in (lambda b: simclr_loss(b, None, cfg), lambda b: supcon_loss(b, cfg), lambda b: similarity_loss(b, cfg), lambda b: weaksupcon_loss(b, cfg).total):
        assert loss(shuffled).item() == pytest.approx(loss(batch).item(), abs=1e-9)


def _gradcheck_cases(np_rng, labels, count=20):
    for _ in range(count):
        yield np_rng.normal(size=(2 * len(labels), 4))


def test_simclr_gradient(np_rng):
    labels = [1, 1, 0]
    cfg = LossConfig(tau=0.5)
    for z in _gradcheck_cases(np_rng, labels):
        assert finite_diff_check(lambda t: simclr_loss(paired_batch(t, labels), None, cfg), z) < 1e-6


def test_pair_term_gradient(np_rng):
    labels = [1, 0, 1]
    cfg = LossConfig(tau=0.5)
    for z in _gradcheck_cases(np_rng, labels):
        assert finite_diff_check(lambda t: simclr_pair_term(paired_batch(t, labels), 0, 3, cfg), z) < 1e-6
        assert finite_diff_check(lambda t: simclr_pair_term(paired_batch(t, labels), 4, 1, cfg), z) < 1e-6


def test_supcon_gradient(np_rng):
    labels = [1, 1, 0, 0]
    cfg = LossConfig(tau=0.5)
    for z in _gradcheck_cases(np_rng, labels):
        assert finite_diff_check(lambda t: supcon_loss(paired_batch(t, labels, pseudo_labels=labels), cfg), z) < 1e-6


def test_similarity_gradient(np_rng):
    labels = [0, 0, 1]
    cfg = LossConfig(tau=0.5)
    for z in _gradcheck_cases(np_rng, labels):
        assert finite_diff_check(lambda t: similarity_loss(paired_batch(t, labels), cfg), z) < 1e-6


def test_weaksupcon_gradient(np_rng):
    labels = [0, 0, 1, 1]
    cfg = LossConfig(tau=0.5, alpha=1.0)
    for z in _gradcheck_cases(np_rng, labels):
        assert finite_diff_check(lambda t: weaksupcon_loss(paired_batch(t, labels), cfg).total, z) < 1e-6
