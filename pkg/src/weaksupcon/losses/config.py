from dataclasses import dataclass

import numpy as np

from weaksupcon.common.errors import BatchError, ConfigError
from weaksupcon.numcore.tensor import as_tensor

NEGATIVE = 0
POSITIVE = 1


@dataclass(frozen=True)
class LossConfig:
    """
    Loss hyperparameters.

    tau is the softmax temperature, alpha weights the Similarity Loss in the
    WeakSupCon total and simclr_weight weights its SimCLR term (0 trains the
    Similarity Loss alone).
    """

    tau: float = 0.5
    alpha: float = 1.0
    normalize_inputs: bool = True
    simclr_weight: float = 1.0

    def __post_init__(self):
        if not self.tau > 0:
            raise ConfigError(f"tau must be > 0, got {self.tau}", field="tau")
        if not self.alpha >= 0:
            raise ConfigError(f"alpha must be >= 0, got {self.alpha}", field="alpha")
        if not self.simclr_weight >= 0:
            raise ConfigError(f"simclr_weight must be >= 0, got {self.simclr_weight}", field="simclr_weight")


class ContrastiveBatch:
    """
    2N projected views with their origin ids and bag labels.

    Both views of an origin share bag_label (and pseudo_label when given).
    """

    def __init__(self, z, origin, bag_label, pseudo_label=None):
        self.z = as_tensor(z)
        self.origin = np.asarray(origin, dtype=np.int64)
        self.bag_label = np.asarray(bag_label, dtype=np.int64)
        self.pseudo_label = None if pseudo_label is None else np.asarray(pseudo_label, dtype=np.int64)
        self.partner = self._validate()

    @property
    def N(self):  # pylint: disable=invalid-name
        return len(self.origin) // 2

    def __len__(self):
        return len(self.origin)

    def _validate(self):
        rows = self.z.shape[0] if self.z.data.ndim == 2 else -1
        for name, values in (("origin", self.origin), ("bag_label", self.bag_label), ("pseudo_label", self.pseudo_label)):
            if values is not None and len(values) != rows:
                raise BatchError(f"{name} has length {len(values)}, z has {rows} rows", field=name)
        if not np.all(np.isin(self.bag_label, (NEGATIVE, POSITIVE))):
            raise BatchError("bag_label entries must be 0 (negative) or 1 (positive)", field="bag_label")

        order = np.argsort(self.origin, kind="stable")
        ids, counts = np.unique(self.origin, return_counts=True)
        bad = ids[counts != 2]
        if bad.size:
            raise BatchError(f"every origin must appear exactly twice; offending origins {bad.tolist()}", origins=bad.tolist())

        first, second = order[0::2], order[1::2]
        partner = np.empty_like(self.origin)
        partner[first] = second
        partner[second] = first
        for name, values in (("bag_label", self.bag_label), ("pseudo_label", self.pseudo_label)):
            if values is not None and np.any(values[first] != values[second]):
                raise BatchError(f"views of one origin disagree on {name}", field=name)
        return partner


def partition_views(batch):
    """Index arrays of negative-bag views and positive-bag views."""
    return np.flatnonzero(batch.bag_label == NEGATIVE), np.flatnonzero(batch.bag_label == POSITIVE)
