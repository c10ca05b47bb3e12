import numpy as np

from weaksupcon.common.errors import ZeroNormError
from weaksupcon.numcore.ops import NORM_EPS, l2_normalize


def cosine_similarity(u, v):
    """u.v / (|u| |v|), clamped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu <= NORM_EPS:
        raise ZeroNormError("cosine_similarity", 0)
    if nv <= NORM_EPS:
        raise ZeroNormError("cosine_similarity", 1)
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def prepared_features(batch, cfg):
    """Rows used in every dot product: unit-normalized unless disabled."""
    return l2_normalize(batch.z) if cfg.normalize_inputs else batch.z
