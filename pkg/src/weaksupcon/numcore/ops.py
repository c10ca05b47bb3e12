"""
Differentiable operations on Tensors.

Each op computes its result with numpy in float64 and attaches a backward rule
returning one gradient per parent (None where a parent does not need one).
"""

import numpy as np

from weaksupcon.common.errors import DomainError, ShapeError, ZeroNormError
from weaksupcon.numcore.tensor import Tensor, as_tensor

NORM_EPS = 1e-12


def _node(data, parents, op, backward_fn):
    out = Tensor(data, parents=parents, op=op)
    if out.requires_grad:
        out.backward_fn = backward_fn
    return out


def _unbroadcast(grad, shape):
    """Sum grad down to shape, undoing numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op, a, b):
    try:
        return np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(op, a.shape, b.shape) from None


def matmul(a, b):
    a, b = as_tensor(a), as_tensor(b)
    if a.data.ndim != 2 or b.data.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError("matmul", a.shape, b.shape)

    def backward_fn(g):
        return g @ b.data.T, a.data.T @ g

    return _node(a.data @ b.data, (a, b), "matmul", backward_fn)


def add(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("add", a, b)

    def backward_fn(g):
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)

    return _node(a.data + b.data, (a, b), "add", backward_fn)


def sub(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("sub", a, b)

    def backward_fn(g):
        return _unbroadcast(g, a.shape), _unbroadcast(-g, b.shape)

    return _node(a.data - b.data, (a, b), "sub", backward_fn)


def mul(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("mul", a, b)

    def backward_fn(g):
        return _unbroadcast(g * b.data, a.shape), _unbroadcast(g * a.data, b.shape)

    return _node(a.data * b.data, (a, b), "mul", backward_fn)


def scale(a, factor):
    a = as_tensor(a)
    factor = float(factor)

    def backward_fn(g):
        return (g * factor,)

    return _node(a.data * factor, (a,), "scale", backward_fn)


def tanh(a):
    a = as_tensor(a)
    out = np.tanh(a.data)

    def backward_fn(g):
        return (g * (1.0 - out * out),)

    return _node(out, (a,), "tanh", backward_fn)


def _stable_sigmoid(x):
    e = np.exp(-np.abs(x))
    return np.where(x >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def sigmoid(a):
    a = as_tensor(a)
    out = _stable_sigmoid(a.data)

    def backward_fn(g):
        return (g * out * (1.0 - out),)

    return _node(out, (a,), "sigmoid", backward_fn)


def relu(a):
    a = as_tensor(a)
    active = a.data > 0

    def backward_fn(g):
        return (g * active,)

    return _node(np.where(active, a.data, 0.0), (a,), "relu", backward_fn)


def softplus(a):
    """log(1 + exp(a)), evaluated without overflow."""
    a = as_tensor(a)
    out = np.maximum(a.data, 0.0) + np.log1p(np.exp(-np.abs(a.data)))

    def backward_fn(g):
        return (g * _stable_sigmoid(a.data),)

    return _node(out, (a,), "softplus", backward_fn)


def exp(a):
    a = as_tensor(a)
    out = np.exp(a.data)
    if not np.all(np.isfinite(out)):
        raise DomainError("exp: overflow", op="exp")

    def backward_fn(g):
        return (g * out,)

    return _node(out, (a,), "exp", backward_fn)


def log(a):
    a = as_tensor(a)
    if np.any(a.data <= 0):
        bad = int(np.flatnonzero(a.data.reshape(-1) <= 0)[0])
        raise DomainError(f"log: input must be > 0 (flat index {bad})", op="log", index=bad)

    def backward_fn(g):
        return (g / a.data,)

    return _node(np.log(a.data), (a,), "log", backward_fn)


def l2_normalize(a):
    """Scale every row of a 2-D tensor (or a single vector) to unit norm."""
    a = as_tensor(a)
    x = a.data if a.data.ndim == 2 else a.data.reshape(1, -1)
    norms = np.sqrt(np.sum(x * x, axis=1, keepdims=True))
    small = np.flatnonzero(norms[:, 0] <= NORM_EPS)
    if small.size:
        raise ZeroNormError("l2_normalize", small[0])
    y = x / norms

    def backward_fn(g):
        g2 = g.reshape(y.shape)
        dx = (g2 - y * np.sum(g2 * y, axis=1, keepdims=True)) / norms
        return (dx.reshape(a.shape),)

    return _node(y.reshape(a.shape), (a,), "l2_normalize", backward_fn)


def log_sum_exp(a, axis=None, mask=None):
    """
    Max-shifted log of summed exponentials.

    Args:
        a (Tensor): Input values
        axis (int): Reduction axis; None reduces everything to a scalar
        mask (ndarray): Boolean array broadcastable to a; False entries are
            excluded from the sum

    Returns:
        Tensor: Reduced values
    """
    a = as_tensor(a)
    keep = np.ones(a.shape, dtype=bool) if mask is None else np.broadcast_to(np.asarray(mask, dtype=bool), a.shape)
    if not np.all(np.any(keep, axis=axis)):
        raise DomainError("log_sum_exp: reduction over an empty set", op="log_sum_exp")
    masked = np.where(keep, a.data, -np.inf)
    shift = np.max(masked, axis=axis, keepdims=True)
    weights = np.where(keep, np.exp(masked - shift), 0.0)
    total = np.sum(weights, axis=axis, keepdims=True)
    out_keep = np.log(total) + shift
    softmax = weights / total

    def backward_fn(g):
        g_keep = g if axis is None else np.expand_dims(g, axis)
        return (softmax * g_keep,)

    out = out_keep.reshape(()) if axis is None else np.squeeze(out_keep, axis=axis)
    return _node(out, (a,), "log_sum_exp", backward_fn)


def sum(a, axis=None, keepdims=False):  # pylint: disable=redefined-builtin
    a = as_tensor(a)
    out = np.sum(a.data, axis=axis, keepdims=keepdims)

    def backward_fn(g):
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, a.shape).copy(),)

    return _node(out, (a,), "sum", backward_fn)


def mean(a, axis=None, keepdims=False):
    a = as_tensor(a)
    count = a.data.size if axis is None else a.shape[axis]
    if count == 0:
        raise DomainError("mean: empty reduction", op="mean")
    return scale(sum(a, axis=axis, keepdims=keepdims), 1.0 / count)


def transpose(a):
    a = as_tensor(a)
    if a.data.ndim != 2:
        raise ShapeError("transpose", a.shape)

    def backward_fn(g):
        return (g.T,)

    return _node(a.data.T, (a,), "transpose", backward_fn)


def reshape(a, shape):
    a = as_tensor(a)
    try:
        out = a.data.reshape(shape)
    except ValueError:
        raise ShapeError("reshape", a.shape, shape) from None

    def backward_fn(g):
        return (g.reshape(a.shape),)

    return _node(out, (a,), "reshape", backward_fn)


def take_rows(a, index):
    """Gather rows of a 2-D tensor; repeated indices accumulate gradient."""
    a = as_tensor(a)
    index = np.asarray(index, dtype=np.int64)
    if a.data.ndim != 2 or (index.size and (index.min() < 0 or index.max() >= a.shape[0])):
        raise ShapeError("take_rows", a.shape, index.shape)

    def backward_fn(g):
        grad = np.zeros_like(a.data)
        np.add.at(grad, index, g)
        return (grad,)

    return _node(a.data[index], (a,), "take_rows", backward_fn)


def concat_rows(tensors):
    tensors = [as_tensor(t) for t in tensors]
    widths = {t.shape[1] for t in tensors if t.data.ndim == 2}
    if not tensors or len(widths) != 1 or any(t.data.ndim != 2 for t in tensors):
        raise ShapeError("concat_rows", tensors[0].shape if tensors else (), tensors[-1].shape if tensors else ())
    bounds = np.cumsum([0] + [t.shape[0] for t in tensors])

    def backward_fn(g):
        return tuple(g[bounds[k]:bounds[k + 1]] for k in range(len(tensors)))

    return _node(np.concatenate([t.data for t in tensors], axis=0), tuple(tensors), "concat_rows", backward_fn)
