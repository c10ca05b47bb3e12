from dataclasses import dataclass, field

import numpy as np

from weaksupcon.numcore.pca import pca_top2


@dataclass
class PCASpread:
    points: list  # (x, y, group) rows
    pc1_range: dict = field(default_factory=dict)
    combined_range: float = 0.0
    explained_variance: np.ndarray = None


def pca_spread(features, groups):
    """
    Project the pooled features on their top two principal components and
    measure the first-component range of each group.

    Args:
        features (ndarray): n x D features, n >= 2
        groups (array-like): Group name per row

    Returns:
        PCASpread: Points, per-group and combined PC1 ranges
    """
    groups = np.asarray(groups)
    result = pca_top2(features)
    pc1 = result.projected[:, 0]
    ranges = {}
    for group in dict.fromkeys(groups.tolist()):
        values = pc1[groups == group]
        ranges[group] = float(values.max() - values.min())
    points = [(float(x), float(y), g) for (x, y), g in zip(result.projected, groups.tolist())]
    return PCASpread(
        points=points,
        pc1_range=ranges,
        combined_range=float(pc1.max() - pc1.min()),
        explained_variance=result.explained_variance,
    )
