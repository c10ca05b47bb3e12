from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from weaksupcon.common.errors import DataError, ConfigError

NEGATIVE = 0
POSITIVE = 1


@dataclass
class Bag:
    """
    A labeled collection of instance vectors.

    witness_mask marks the truly positive instances; it exists only for
    synthetic data and is never read by training code.
    """

    id: int
    label: int
    instances: np.ndarray
    witness_mask: Optional[np.ndarray] = None

    def __post_init__(self):
        self.instances = np.asarray(self.instances, dtype=np.float64)
        if self.instances.ndim != 2 or self.instances.shape[0] < 1:
            raise DataError(f"bag {self.id}: instances must be a non-empty n x d matrix", bag_id=self.id)
        if self.label not in (NEGATIVE, POSITIVE):
            raise DataError(f"bag {self.id}: label must be 0 or 1, got {self.label}", bag_id=self.id)
        if self.witness_mask is not None:
            self.witness_mask = np.asarray(self.witness_mask, dtype=bool)
            if self.witness_mask.shape != (self.instances.shape[0],):
                raise DataError(f"bag {self.id}: witness_mask length does not match instance count", bag_id=self.id)
            if bool(self.witness_mask.any()) != (self.label == POSITIVE):
                raise DataError(f"bag {self.id}: label {self.label} violates the standard MIL assumption", bag_id=self.id)

    @property
    def size(self):
        return self.instances.shape[0]


@dataclass(frozen=True)
class SyntheticSpec:
    d: int = 32
    neg_clusters: int = 3
    pos_clusters: int = 2
    cluster_sigma: float = 0.5
    cluster_separation: float = 3.0
    witness_rate: float = 0.1
    bag_size_range: tuple = (40, 60)
    counts: tuple = (30, 30, 10, 10, 15, 15)
    seed: int = 7

    def __post_init__(self):
        object.__setattr__(self, "bag_size_range", tuple(int(v) for v in self.bag_size_range))
        object.__setattr__(self, "counts", tuple(int(v) for v in self.counts))
        if not 0.0 < self.witness_rate <= 1.0:
            raise ConfigError(f"witness_rate must be in (0, 1], got {self.witness_rate}", field="witness_rate")
        if len(self.bag_size_range) != 2 or self.bag_size_range[0] < 2 or self.bag_size_range[1] < self.bag_size_range[0]:
            raise ConfigError(f"bag_size_range must be [min, max] with 2 <= min <= max, got {list(self.bag_size_range)}", field="bag_size_range")
        if not self.cluster_separation > 0:
            raise ConfigError("cluster_separation must be > 0", field="cluster_separation")
        if len(self.counts) != 6 or min(self.counts) < 0:
            raise ConfigError("counts must be six non-negative integers", field="counts")
        if self.d < 1 or self.neg_clusters < 1 or self.pos_clusters < 1 or self.cluster_sigma < 0:
            raise ConfigError("d and cluster counts must be >= 1 and cluster_sigma >= 0", field="d")


@dataclass
class DatasetSplit:
    train: list = field(default_factory=list)
    val: list = field(default_factory=list)
    test: list = field(default_factory=list)

    def __post_init__(self):
        ids = [bag.id for bag in self.all_bags()]
        if len(ids) != len(set(ids)):
            raise DataError("bag ids must be unique across the split")

    def all_bags(self):
        return list(self.train) + list(self.val) + list(self.test)

    def items(self):
        return (("train", self.train), ("val", self.val), ("test", self.test))
