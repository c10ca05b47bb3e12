"""
Directional checks on the standard benchmark. These take minutes and are
deselected by default; run with `pytest -m slow`.
"""

from dataclasses import replace

import numpy as np
import pytest

from weaksupcon.analysis.diagnostics import feature_variance, mean_pairwise_cosine
from weaksupcon.analysis.metrics import evaluate_scores, roc_auc
from weaksupcon.cli.run_analyze import analyze_features
from weaksupcon.losses.config import LossConfig
from weaksupcon.mildata.generate_synthetic import generate_synthetic
from weaksupcon.mildata.standard_benchmark import standard_benchmark
from weaksupcon.milmodels.predict import mil_model_from_checkpoint, predict_bags
from weaksupcon.milmodels.spec import MILModelSpec, MILTrainConfig
from weaksupcon.milmodels.train_mil import train_mil
from weaksupcon.representation import AugmentationSpec, EncoderSpec, PretrainConfig, ProjectionSpec, extract_features, pretrain

pytestmark = pytest.mark.slow

ENC = EncoderSpec()
PROJ = ProjectionSpec()


@pytest.fixture(scope="module")
def benchmark():
    return generate_synthetic(standard_benchmark())


def _projected(bags, checkpoint):
    projected = extract_features(bags, checkpoint, use_projection=True)
    features = np.concatenate([bag.instances for bag in projected], axis=0)
    groups = np.concatenate([["negative" if bag.label == 0 else "positive"] * bag.size for bag in projected])
    return features, groups


@pytest.fixture(scope="module")
def weaksupcon_run(benchmark):
    return pretrain(benchmark.train, PretrainConfig(mode="weaksupcon", seed=7), ENC, PROJ, AugmentationSpec())


@pytest.fixture(scope="module")
def weaksupcon_checkpoint(weaksupcon_run):
    return weaksupcon_run.checkpoint


def test_negative_features_gather_around_anchor(benchmark, weaksupcon_checkpoint):
    features, groups = _projected(benchmark.train, weaksupcon_checkpoint)
    fractions = analyze_features(features, groups)["fractions"]
    assert fractions["negative"][0.9] >= fractions["positive"][0.9] + 0.2


def test_negative_group_is_more_compact(benchmark, weaksupcon_checkpoint):
    features, groups = _projected(benchmark.train, weaksupcon_checkpoint)
    ranges = analyze_features(features, groups)["pca"].pc1_range
    assert ranges["negative"] < ranges["positive"]


def test_weaksupcon_loss_decreases(weaksupcon_run):
    log = weaksupcon_run.loss_log
    assert len(log) == 200
    assert log[-1].total < log[0].total


def test_negative_features_grow_more_similar(benchmark, weaksupcon_checkpoint):
    untrained = pretrain(benchmark.train, PretrainConfig(mode="weaksupcon", seed=7, epochs=1, learning_rate=0.0), ENC, PROJ, AugmentationSpec())
    negatives = [bag for bag in benchmark.train if bag.label == 0]
    before, _ = _projected(negatives, untrained.checkpoint)
    after, _ = _projected(negatives, weaksupcon_checkpoint)
    assert mean_pairwise_cosine(after) > mean_pairwise_cosine(before)


def test_similarity_loss_alone_collapses(benchmark):
    cfg = PretrainConfig(mode="similarity", loss=replace(LossConfig(), simclr_weight=0.0), seed=7)
    result = pretrain(benchmark.train, cfg, ENC, PROJ, AugmentationSpec())
    features, _ = _projected(benchmark.train, result.checkpoint)
    assert feature_variance(features) < 1e-3

    train = extract_features(benchmark.train, result.checkpoint)
    val = extract_features(benchmark.val, result.checkpoint)
    test = extract_features(benchmark.test, result.checkpoint)
    mil = train_mil(train, val, MILModelSpec(kind="abmil"), MILTrainConfig(seed=7))
    spec, params = mil_model_from_checkpoint(mil.checkpoint)
    scores = [p.score for p in predict_bags(spec, params, test, 7)]
    report = evaluate_scores(scores, [bag.label for bag in test])
    assert 0.45 <= report.balanced_accuracy <= 0.55


def _test_auc(benchmark, checkpoint, kind, seed):
    train, val, test = (extract_features(bags, checkpoint) for bags in (benchmark.train, benchmark.val, benchmark.test))
    mil = train_mil(train, val, MILModelSpec(kind=kind), MILTrainConfig(seed=seed))
    spec, params = mil_model_from_checkpoint(mil.checkpoint)
    scores = [p.score for p in predict_bags(spec, params, test, seed)]
    return roc_auc(scores, np.array([bag.label for bag in test]))


@pytest.fixture(scope="module")
def head_aucs(benchmark):
    aucs = {}
    for mode in ("simclr", "weaksupcon"):
        for seed in (7, 8, 9):
            checkpoint = pretrain(benchmark.train, PretrainConfig(mode=mode, seed=seed), ENC, PROJ, AugmentationSpec()).checkpoint
            for kind in ("abmil", "dtfd"):
                aucs.setdefault((mode, kind), []).append(_test_auc(benchmark, checkpoint, kind, seed))
    return {key: float(np.mean(values)) for key, values in aucs.items()}


@pytest.mark.parametrize("kind", ["abmil", "dtfd"])
def test_weaksupcon_features_beat_simclr(head_aucs, kind):
    assert head_aucs[("weaksupcon", kind)] >= head_aucs[("simclr", kind)] + 0.02
