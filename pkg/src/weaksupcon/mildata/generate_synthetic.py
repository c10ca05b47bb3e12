import logging
import math

import numpy as np

from weaksupcon.common.errors import DataError
from weaksupcon.mildata.bag import NEGATIVE, POSITIVE, Bag, DatasetSplit
from weaksupcon.numcore.rng import rng_streams

# Configure logging
logger = logging.getLogger(__name__)

MAX_REJECTION_ROUNDS = 1000


def witness_count(witness_rate, n):
    """ceil(witness_rate * n), guarded against products like 0.1 * 30 = 3.0000000000000004."""
    return max(1, math.ceil(witness_rate * n - 1e-9))


def _draw_means(spec, gen):
    """Cluster means on the sphere of radius cluster_separation, redrawn until
    every positive mean is at least cluster_separation from every negative one."""
    for _ in range(MAX_REJECTION_ROUNDS):
        means = gen.normal(size=(spec.neg_clusters + spec.pos_clusters, spec.d))
        means *= spec.cluster_separation / np.linalg.norm(means, axis=1, keepdims=True)
        neg, pos = means[: spec.neg_clusters], means[spec.neg_clusters:]
        gaps = np.linalg.norm(neg[:, None, :] - pos[None, :, :], axis=2)
        if gaps.min() >= spec.cluster_separation:
            return neg, pos
    raise DataError(
        f"could not place cluster means {spec.cluster_separation} apart in {MAX_REJECTION_ROUNDS} rounds; try a smaller cluster_separation",
        cluster_separation=spec.cluster_separation,
    )


def _make_bag(bag_id, label, spec, neg_means, pos_means, gen):
    n = int(gen.integers(spec.bag_size_range[0], spec.bag_size_range[1] + 1))
    mask = np.zeros(n, dtype=bool)
    if label == POSITIVE:
        mask[gen.permutation(n)[: witness_count(spec.witness_rate, n)]] = True
    centers = np.where(
        mask[:, None],
        pos_means[gen.integers(0, len(pos_means), size=n)],
        neg_means[gen.integers(0, len(neg_means), size=n)],
    )
    instances = centers + spec.cluster_sigma * gen.normal(size=(n, spec.d))
    return Bag(id=bag_id, label=label, instances=instances, witness_mask=mask)


def generate_synthetic(spec):
    """
    Gaussian-mixture bags under the standard MIL assumption.

    Negative bags draw every instance from negative components. Positive bags
    draw ceil(witness_rate * n) instances (at shuffled positions) from positive
    components and the rest from negative ones.

    Args:
        spec (SyntheticSpec): Generator settings

    Returns:
        DatasetSplit: train / val / test bags with sequential ids
    """
    gen = rng_streams(spec.seed)["data"].generator
    neg_means, pos_means = _draw_means(spec, gen)

    splits = []
    next_id = 0
    for n_neg, n_pos in zip(spec.counts[0::2], spec.counts[1::2]):
        bags = []
        for label, count in ((NEGATIVE, n_neg), (POSITIVE, n_pos)):
            for _ in range(count):
                bags.append(_make_bag(next_id, label, spec, neg_means, pos_means, gen))
                next_id += 1
        splits.append(bags)

    split = DatasetSplit(train=splits[0], val=splits[1], test=splits[2])
    logger.info(f"Generated synthetic dataset: train={len(split.train)} val={len(split.val)} test={len(split.test)} bags")
    return split
