"""
Shared building blocks: parameter init, the bag-level classifier and gated
attention pooling.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from weaksupcon.common.errors import DataError
from weaksupcon.milmodels.spec import BagPrediction
from weaksupcon.numcore import ops
from weaksupcon.numcore.tensor import Tensor, as_tensor


@dataclass
class MILForward:
    """Differentiable outputs of one aggregator pass over one bag."""

    bag_id: int
    logit: Tensor
    attention: Optional[Tensor] = None
    pseudo_logits: list = field(default_factory=list)
    instance_attention: Optional[np.ndarray] = None

    @property
    def score(self):
        return float(ops.sigmoid(self.logit.detach()).item())

    def prediction(self):
        if self.instance_attention is not None:
            weights = self.instance_attention
        elif self.attention is not None:
            weights = self.attention.data.reshape(-1)
        else:
            weights = None
        return BagPrediction(bag_id=self.bag_id, score=self.score, attention=weights)


def _dense_init(prefix, fan_in, fan_out, gen):
    bound = 1.0 / np.sqrt(fan_in)
    return {
        f"{prefix}.weight": Tensor(gen.uniform(-bound, bound, size=(fan_in, fan_out)), requires_grad=True, name=f"{prefix}.weight"),
        f"{prefix}.bias": Tensor(gen.uniform(-bound, bound, size=(1, fan_out)), requires_grad=True, name=f"{prefix}.bias"),
    }


def init_classifier(prefix, input_dim, widths, gen):
    params = {}
    dims = (input_dim,) + tuple(widths) + (1,)
    for k in range(len(dims) - 1):
        params.update(_dense_init(f"{prefix}.{k}", dims[k], dims[k + 1], gen))
    return params


def init_attention(prefix, input_dim, attention_dim, gen):
    params = {}
    params.update(_dense_init(f"{prefix}.V", input_dim, attention_dim, gen))
    params.update(_dense_init(f"{prefix}.U", input_dim, attention_dim, gen))
    params.update(_dense_init(f"{prefix}.w", attention_dim, 1, gen))
    return params


def init_mil_params(spec, rng):
    """
    Parameters for spec.kind; dtfd gets separate tier1 / tier2 heads.

    Returns:
        dict: Parameter name -> trainable Tensor
    """
    gen = rng.generator
    if spec.kind in ("mean", "max"):
        return init_classifier("classifier", spec.input_dim, spec.classifier_widths, gen)
    if spec.kind == "abmil":
        params = init_attention("attention", spec.input_dim, spec.attention_dim, gen)
        params.update(init_classifier("classifier", spec.input_dim, spec.classifier_widths, gen))
        return params
    params = {}
    for tier in ("tier1", "tier2"):
        params.update(init_attention(f"{tier}.attention", spec.input_dim, spec.attention_dim, gen))
        params.update(init_classifier(f"{tier}.classifier", spec.input_dim, spec.classifier_widths, gen))
    return params


def _dense(x, params, prefix):
    return ops.add(ops.matmul(x, params[f"{prefix}.weight"]), params[f"{prefix}.bias"])


def classify(x, params, prefix="classifier"):
    """Rows of x -> one logit per row (relu between hidden layers)."""
    k = 0
    out = x
    while f"{prefix}.{k + 1}.weight" in params:
        out = ops.relu(_dense(out, params, f"{prefix}.{k}"))
        k += 1
    return _dense(out, params, f"{prefix}.{k}")


def gated_attention_pool(h, params, prefix="attention"):
    """
    e_k = w . (tanh(V h_k) * sigmoid(U h_k)); a = softmax(e); pooled = sum_k a_k h_k.

    Returns:
        tuple: (pooled 1 x D Tensor, attention n x 1 Tensor)
    """
    gate = ops.mul(ops.tanh(_dense(h, params, f"{prefix}.V")), ops.sigmoid(_dense(h, params, f"{prefix}.U")))
    scores = _dense(gate, params, f"{prefix}.w")
    attention = ops.exp(ops.sub(scores, ops.log_sum_exp(scores)))
    return ops.matmul(ops.transpose(attention), h), attention


def bag_tensor(features):
    h = as_tensor(features)
    if h.data.ndim != 2 or h.shape[0] < 1:
        raise DataError(f"a bag needs at least one instance row, got shape {list(h.shape)}")
    return h


def bce_with_logits(logit, label):
    """softplus(l) - y * l, summed to a scalar."""
    return ops.sum(ops.sub(ops.softplus(logit), ops.scale(logit, float(label))))


def mil_loss(forward, label):
    """Bag cross-entropy, plus the mean pseudo-bag cross-entropy for dtfd."""
    loss = bce_with_logits(forward.logit, label)
    if forward.pseudo_logits:
        tier1 = [bce_with_logits(logit, label) for logit in forward.pseudo_logits]
        total = tier1[0]
        for term in tier1[1:]:
            total = ops.add(total, term)
        loss = ops.add(loss, ops.scale(total, 1.0 / len(tier1)))
    return loss
