import numpy as np

from weaksupcon.common.errors import DomainError


def augment_two_views(x, spec, rng):
    """
    Two stochastic views of each input row: dropout(x + gaussian noise).

    Args:
        x (ndarray): One instance vector or an n x d batch
        spec (AugmentationSpec): Noise scale and dropout probability
        rng (Rng): Augmentation stream; views use independent draws

    Returns:
        tuple: (view_a, view_b), each shaped like x
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError("augment_two_views: non-finite input", op="augment_two_views")
    gen = rng.generator
    views = []
    for _ in range(2):
        noise = gen.normal(0.0, 1.0, size=x.shape) * spec.noise_sigma
        keep = gen.random(size=x.shape) >= spec.dropout_p
        views.append(np.where(keep, x + noise, 0.0))
    return views[0], views[1]
