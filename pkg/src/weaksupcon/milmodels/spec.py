from dataclasses import dataclass
from typing import Optional

import numpy as np

from weaksupcon.common.errors import ConfigError

MIL_KINDS = ("mean", "max", "abmil", "dtfd")


@dataclass(frozen=True)
class MILModelSpec:
    kind: str = "abmil"
    input_dim: int = 32
    attention_dim: int = 16
    num_pseudo_bags: int = 2
    classifier_widths: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "classifier_widths", tuple(int(w) for w in self.classifier_widths))
        if self.kind not in MIL_KINDS:
            raise ConfigError(f"kind must be one of {MIL_KINDS}, got {self.kind!r}", field="kind")
        if self.input_dim < 1 or self.attention_dim < 1 or any(w < 1 for w in self.classifier_widths):
            raise ConfigError("MIL widths must be >= 1", field="input_dim")
        if self.kind == "dtfd" and self.num_pseudo_bags < 2:
            raise ConfigError(f"dtfd needs num_pseudo_bags >= 2, got {self.num_pseudo_bags}", field="num_pseudo_bags")


@dataclass(frozen=True)
class MILTrainConfig:
    epochs: int = 50
    learning_rate: float = 0.01
    seed: int = 7
    grad_clip: float = 5.0

    def __post_init__(self):
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}", field="epochs")
        if not self.learning_rate >= 0:
            raise ConfigError(f"learning_rate must be >= 0, got {self.learning_rate}", field="learning_rate")
        if not self.grad_clip >= 0:
            raise ConfigError(f"grad_clip must be >= 0 (0 disables clipping), got {self.grad_clip}", field="grad_clip")


@dataclass
class BagPrediction:
    bag_id: int
    score: float
    attention: Optional[np.ndarray] = None
