import logging

import numpy as np

from weaksupcon.common.errors import DomainError
from weaksupcon.numcore.tensor import Tensor, backward

# Configure logging
logger = logging.getLogger(__name__)


def _scalar(value):
    return value.item() if isinstance(value, Tensor) else float(value)


def finite_diff_check(f, x, h=1e-5):
    """
    Compare the reverse-mode gradient of f at x with central differences.

    Args:
        f (callable): Maps a Tensor to a scalar Tensor
        x (array-like): Point of evaluation
        h (float): Step size, within [1e-7, 1e-3]

    Returns:
        float: max_i |analytic_i - numeric_i| / max(1, |analytic_i|)
    """
    if not 1e-7 <= h <= 1e-3:
        raise DomainError(f"finite_diff_check: step {h} outside [1e-7, 1e-3]", op="finite_diff_check", h=h)

    point = np.array(x, dtype=np.float64)
    leaf = Tensor(point.copy(), requires_grad=True)
    analytic = backward(f(leaf), leaves=[leaf])[leaf].reshape(-1)

    worst = 0.0
    flat = point.reshape(-1)
    for i in range(flat.size):
        plus, minus = flat.copy(), flat.copy()
        plus[i] += h
        minus[i] -= h
        f_plus = _scalar(f(Tensor(plus.reshape(point.shape))))
        f_minus = _scalar(f(Tensor(minus.reshape(point.shape))))
        if not (np.isfinite(f_plus) and np.isfinite(f_minus)):
            raise DomainError(f"finite_diff_check: non-finite value at coordinate {i}", op="finite_diff_check", coordinate=i)
        numeric = (f_plus - f_minus) / (2.0 * h)
        worst = max(worst, abs(analytic[i] - numeric) / max(1.0, abs(analytic[i])))

    logger.debug(f"finite_diff_check: {flat.size} coordinates, max relative error {worst:.3e}")
    return worst
