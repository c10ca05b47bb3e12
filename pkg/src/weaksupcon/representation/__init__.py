from weaksupcon.representation.augment_two_views import augment_two_views
from weaksupcon.representation.encode_project import encode_project, init_encoder_projection
from weaksupcon.representation.extract_features import extract_features
from weaksupcon.representation.pretrain import LossLogEntry, PretrainResult, pretrain
from weaksupcon.representation.specs import AugmentationSpec, EncoderSpec, PretrainConfig, ProjectionSpec

__all__ = [
    "AugmentationSpec",
    "EncoderSpec",
    "LossLogEntry",
    "PretrainConfig",
    "PretrainResult",
    "ProjectionSpec",
    "augment_two_views",
    "encode_project",
    "extract_features",
    "init_encoder_projection",
    "pretrain",
]
