import logging

import numpy as np

from weaksupcon.common.errors import ShapeError
from weaksupcon.mildata.bag import Bag
from weaksupcon.numcore.tensor import Tensor
from weaksupcon.representation.encode_project import encode, project, specs_from_architecture

# Configure logging
logger = logging.getLogger(__name__)


def extract_features(bags, checkpoint, use_projection=False):
    """
    Frozen per-bag features from a pretraining checkpoint, without augmentation.

    Args:
        bags (list): Bags of raw instances
        checkpoint (Checkpoint): Encoder / projection checkpoint
        use_projection (bool): Return unit-norm projections z instead of the
            embeddings h

    Returns:
        list: Bags with the same ids, labels and witness masks whose instances
            are the extracted features
    """
    enc, _ = specs_from_architecture(checkpoint.architecture)
    params = {name: Tensor(value) for name, value in checkpoint.param_arrays().items()}
    features = []
    for bag in bags:
        if bag.instances.shape[1] != enc.layer_widths[0]:
            raise ShapeError("extract_features", bag.instances.shape, (None, enc.layer_widths[0]))
        h = encode(bag.instances, params, enc)
        out = project(h, params) if use_projection else h
        features.append(Bag(id=bag.id, label=bag.label, instances=np.array(out.data), witness_mask=bag.witness_mask))
    logger.info(f"Extracted {'projected' if use_projection else 'embedding'} features for {len(bags)} bags")
    return features
