import numpy as np

from weaksupcon.common.errors import DomainError

DEFAULT_BINS = 80


def histogram_edges(bins=DEFAULT_BINS):
    return np.linspace(-1.0, 1.0, bins + 1)


def cosine_histogram(cosines, bins=DEFAULT_BINS):
    """
    Counts over uniform bins on [-1, 1]; bins are left-closed and right-open
    except the last, which also holds 1.0.
    """
    values = np.asarray(cosines, dtype=np.float64).reshape(-1)
    outside = np.flatnonzero(~((values >= -1.0) & (values <= 1.0)))
    if outside.size:
        raise DomainError(f"cosine_histogram: value {values[outside[0]]} at index {outside[0]} outside [-1, 1]", index=int(outside[0]))
    counts, _ = np.histogram(values, bins=histogram_edges(bins))
    return counts.astype(np.int64)
