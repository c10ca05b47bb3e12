import numpy as np

from weaksupcon.mildata.bag import DatasetSplit


def assign_pseudo_labels(split):
    """
    Copy each bag's label onto every one of its instances.

    Args:
        split (DatasetSplit | list): Bags, in train / val / test order for a split

    Returns:
        ndarray: One class id per instance, bags concatenated in order
    """
    bags = split.all_bags() if isinstance(split, DatasetSplit) else list(split)
    if not bags:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([np.full(bag.size, bag.label, dtype=np.int64) for bag in bags])
