from dataclasses import dataclass, field

from weaksupcon.common.errors import ConfigError
from weaksupcon.losses.config import LossConfig

ACTIVATIONS = ("relu", "tanh")
PRETRAIN_MODES = ("simclr", "supcon", "weaksupcon", "similarity")


@dataclass(frozen=True)
class EncoderSpec:
    """MLP encoder: layer_widths runs input width -> hidden widths -> embedding width."""

    layer_widths: tuple = (32, 64, 32)
    activation: str = "relu"
    init_stream: str = "init"

    def __post_init__(self):
        object.__setattr__(self, "layer_widths", tuple(int(w) for w in self.layer_widths))
        if len(self.layer_widths) < 3:
            raise ConfigError("encoder needs an input width, at least one hidden width and an embedding width", field="layer_widths")
        if min(self.layer_widths) < 1:
            raise ConfigError("encoder widths must be >= 1", field="layer_widths")
        if self.activation not in ACTIVATIONS:
            raise ConfigError(f"activation must be one of {ACTIVATIONS}, got {self.activation!r}", field="activation")


@dataclass(frozen=True)
class ProjectionSpec:
    hidden_width: int = 32
    output_width: int = 16

    def __post_init__(self):
        if self.hidden_width < 1:
            raise ConfigError("projection hidden_width must be >= 1", field="hidden_width")
        if self.output_width < 2:
            raise ConfigError("projection output_width must be >= 2", field="output_width")


@dataclass(frozen=True)
class AugmentationSpec:
    noise_sigma: float = 0.1
    dropout_p: float = 0.1

    def __post_init__(self):
        if not self.noise_sigma >= 0:
            raise ConfigError(f"noise_sigma must be >= 0, got {self.noise_sigma}", field="noise_sigma")
        if not 0.0 <= self.dropout_p <= 0.5:
            raise ConfigError(f"dropout_p must be in [0, 0.5], got {self.dropout_p}", field="dropout_p")


@dataclass(frozen=True)
class PretrainConfig:
    mode: str = "weaksupcon"
    loss: LossConfig = field(default_factory=LossConfig)
    batch_n: int = 256
    epochs: int = 200
    learning_rate: float = 0.05
    seed: int = 7

    def __post_init__(self):
        if self.mode not in PRETRAIN_MODES:
            raise ConfigError(f"mode must be one of {PRETRAIN_MODES}, got {self.mode!r}", field="mode")
        if self.batch_n < 2:
            raise ConfigError(f"batch_n must be >= 2, got {self.batch_n}", field="batch_n")
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}", field="epochs")
        if not self.learning_rate >= 0:
            raise ConfigError(f"learning_rate must be >= 0, got {self.learning_rate}", field="learning_rate")
