import numpy as np

from weaksupcon.milmodels.heads import MILForward, bag_tensor, classify, gated_attention_pool
from weaksupcon.numcore import ops


def mean_pool_forward(features, params, bag_id=0):
    """Classifier on the average instance feature."""
    h = bag_tensor(features)
    return MILForward(bag_id=bag_id, logit=classify(ops.mean(h, axis=0, keepdims=True), params))


def max_pool_forward(features, params, bag_id=0):
    """
    Highest instance score; the gradient reaches only the argmax instance
    (lowest index among ties).
    """
    h = bag_tensor(features)
    logits = classify(h, params)
    top = int(np.argmax(logits.data[:, 0]))
    return MILForward(bag_id=bag_id, logit=ops.take_rows(logits, [top]))


def abmil_forward(features, params, bag_id=0):
    """Gated attention pooling followed by the bag classifier."""
    h = bag_tensor(features)
    pooled, attention = gated_attention_pool(h, params)
    return MILForward(bag_id=bag_id, logit=classify(pooled, params), attention=attention)
