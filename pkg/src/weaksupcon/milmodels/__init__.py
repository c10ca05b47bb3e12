from weaksupcon.milmodels.dtfd import PseudoBag, dtfd_forward, dtfd_split, split_indices
from weaksupcon.milmodels.heads import MILForward, bce_with_logits, init_mil_params, mil_loss
from weaksupcon.milmodels.pooling import abmil_forward, max_pool_forward, mean_pool_forward
from weaksupcon.milmodels.predict import forward_bag, mil_model_from_checkpoint, predict_bags
from weaksupcon.milmodels.spec import BagPrediction, MILModelSpec, MILTrainConfig
from weaksupcon.milmodels.train_mil import EpochRecord, MILTrainResult, train_mil

__all__ = [
    "BagPrediction",
    "EpochRecord",
    "MILForward",
    "MILModelSpec",
    "MILTrainConfig",
    "MILTrainResult",
    "PseudoBag",
    "abmil_forward",
    "bce_with_logits",
    "dtfd_forward",
    "dtfd_split",
    "forward_bag",
    "init_mil_params",
    "max_pool_forward",
    "mean_pool_forward",
    "mil_loss",
    "mil_model_from_checkpoint",
    "predict_bags",
    "split_indices",
    "train_mil",
]
