"""
Tensor values and reverse-mode differentiation.

A Tensor wraps a float64 numpy array. Tensors produced by operations keep a
reference to their parents and a backward rule; walking the parents from a
scalar loss yields the computation graph that `backward` traverses in reverse
topological order.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from weaksupcon.common.errors import DomainError, ShapeError

# Configure logging
logger = logging.getLogger(__name__)


class Tensor:
    """Dense float64 array with optional gradient tracking."""

    __array_priority__ = 100

    def __init__(self, data, requires_grad=False, parents=(), op="leaf", name=None):
        self.data = np.array(data, dtype=np.float64)
        self.parents = tuple(parents)
        self.requires_grad = bool(requires_grad) or any(p.requires_grad for p in self.parents)
        self.op = op
        self.name = name
        self.grad = None
        # backward rule: upstream gradient -> tuple of gradients aligned with parents
        self.backward_fn = None

    @property
    def shape(self):
        return self.data.shape

    @property
    def is_leaf(self):
        return not self.parents

    def item(self):
        if self.data.size != 1:
            raise ShapeError("item", self.data.shape, message=f"item: expected one value, got shape {list(self.data.shape)}")
        return float(self.data.reshape(()))

    def numpy(self):
        return self.data.copy()

    def detach(self):
        return Tensor(self.data.copy())

    def __repr__(self):
        label = self.name or self.op
        return f"Tensor({label}, shape={list(self.shape)}, requires_grad={self.requires_grad})"

    def __add__(self, other):
        from weaksupcon.numcore import ops

        return ops.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        from weaksupcon.numcore import ops

        return ops.sub(self, other)

    def __rsub__(self, other):
        from weaksupcon.numcore import ops

        return ops.sub(other, self)

    def __mul__(self, other):
        from weaksupcon.numcore import ops

        return ops.mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        from weaksupcon.numcore import ops

        return ops.scale(self, -1.0)

    def __matmul__(self, other):
        from weaksupcon.numcore import ops

        return ops.matmul(self, other)

    def backward(self):
        return backward(self)


def as_tensor(value):
    return value if isinstance(value, Tensor) else Tensor(value)


@dataclass
class Graph:
    """Nodes reachable from a root, parents always before children."""

    nodes: list = field(default_factory=list)

    def leaves(self):
        return [n for n in self.nodes if n.is_leaf and n.requires_grad]


def build_graph(root):
    """
    Collect every node reachable from root in topological order.

    Args:
        root (Tensor): Output node

    Returns:
        Graph: Nodes ordered so that each node's parents precede it
    """
    order = []
    visited = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in reversed(node.parents):
            if id(parent) not in visited and parent.requires_grad:
                stack.append((parent, False))
    return Graph(nodes=order)


def backward(loss, leaves=None, graph=None):
    """
    Reverse-mode pass from a scalar loss.

    Args:
        loss (Tensor): Scalar output node
        leaves (iterable): Trainable leaves to report; leaves the loss does not
            depend on get a zero gradient
        graph (Graph): Precomputed graph for loss, built when omitted

    Returns:
        dict: Leaf tensor -> gradient array (also stored on leaf.grad)
    """
    if loss.data.size != 1:
        raise ShapeError("backward", loss.shape, message=f"backward: loss must be scalar, got shape {list(loss.shape)}")

    graph = graph or build_graph(loss)
    grads = {id(loss): np.ones_like(loss.data)}
    for node in reversed(graph.nodes):
        upstream = grads.pop(id(node), None) if not node.is_leaf else grads.get(id(node))
        if upstream is None or node.backward_fn is None:
            continue
        parent_grads = node.backward_fn(upstream)
        for parent, g in zip(node.parents, parent_grads):
            if g is None or not parent.requires_grad:
                continue
            if g.shape != parent.data.shape:
                raise ShapeError(f"backward[{node.op}]", g.shape, parent.data.shape)
            if id(parent) in grads:
                grads[id(parent)] = grads[id(parent)] + g
            else:
                grads[id(parent)] = g

    wanted = list(leaves) if leaves is not None else graph.leaves()
    result = {}
    for leaf in wanted:
        g = grads.get(id(leaf))
        leaf.grad = np.zeros_like(leaf.data) if g is None else g
        result[leaf] = leaf.grad
    if not all(np.all(np.isfinite(g)) for g in result.values()):
        raise DomainError("backward: non-finite gradient", op="backward")
    return result
