"""
Run configuration.

One JSON document maps onto RunConfig; every key is checked against the
dataclass fields and unknown keys are rejected. CLI flags override the file,
the file overrides the defaults.
"""

import dataclasses
import json
import logging
import typing
from dataclasses import dataclass, field, replace
from pathlib import Path

from weaksupcon.common.errors import ConfigError
from weaksupcon.common.hashing import config_hash
from weaksupcon.mildata.bag import SyntheticSpec
from weaksupcon.mildata.standard_benchmark import standard_benchmark
from weaksupcon.milmodels.spec import MILModelSpec, MILTrainConfig
from weaksupcon.representation.specs import AugmentationSpec, EncoderSpec, PretrainConfig, ProjectionSpec

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    data: SyntheticSpec = field(default_factory=standard_benchmark)
    pretrain: PretrainConfig = field(default_factory=PretrainConfig)
    encoder: EncoderSpec = field(default_factory=EncoderSpec)
    projection: ProjectionSpec = field(default_factory=ProjectionSpec)
    augmentation: AugmentationSpec = field(default_factory=AugmentationSpec)
    mil: MILModelSpec = field(default_factory=MILModelSpec)
    mil_train: MILTrainConfig = field(default_factory=MILTrainConfig)
    repeats: int = 3
    output_dir: str = "runs/default"

    def __post_init__(self):
        if self.repeats < 1:
            raise ConfigError(f"repeats must be >= 1, got {self.repeats}", field="repeats")
        if self.encoder.layer_widths[0] != self.data.d:
            raise ConfigError(f"encoder input width {self.encoder.layer_widths[0]} does not match data.d {self.data.d}", field="encoder.layer_widths")
        if self.mil.input_dim != self.encoder.layer_widths[-1]:
            raise ConfigError(f"mil.input_dim {self.mil.input_dim} does not match embedding width {self.encoder.layer_widths[-1]}", field="mil.input_dim")

    def pretrain_seeds(self):
        return [self.pretrain.seed + r for r in range(self.repeats)]

    def mil_seeds(self):
        return [self.mil_train.seed + r for r in range(self.repeats)]

    def hash(self):
        """Hash of everything except the output location."""
        return config_hash(replace(self, output_dir=""))


def _coerce(value, hint, path):
    if dataclasses.is_dataclass(hint):
        return build_dataclass(hint, value, path)
    if hint is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{path} must be a boolean", field=path)
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{path} must be an integer", field=path)
        return value
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path} must be a number", field=path)
        return float(value)
    if hint is str:
        if not isinstance(value, str):
            raise ConfigError(f"{path} must be a string", field=path)
        return value
    if hint is tuple:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{path} must be a list", field=path)
        return tuple(value)
    return value


def build_dataclass(cls, data, path="config"):
    """
    Strictly build a (nested) config dataclass from parsed JSON.

    Args:
        cls (type): Target dataclass
        data (dict): Parsed JSON object
        path (str): Dotted location, used in error messages

    Returns:
        object: cls instance; missing keys keep their defaults
    """
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must be a JSON object", field=path)
    hints = typing.get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"unknown key {path}.{unknown[0]}", field=f"{path}.{unknown[0]}", unknown=unknown)
    kwargs = {name: _coerce(value, hints[name], f"{path}.{name}") for name, value in data.items()}
    try:
        return cls(**kwargs)
    except TypeError as e:
        raise ConfigError(f"{path}: {str(e)}", field=path) from None


def apply_overrides(cfg, overrides):
    """Apply --seed/--alpha/--tau/--mode/--mil-kind/--out/--repeats/--epochs values that were given."""
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    pretrain, mil_train, mil = cfg.pretrain, cfg.mil_train, cfg.mil
    if "seed" in overrides:
        pretrain = replace(pretrain, seed=overrides["seed"])
        mil_train = replace(mil_train, seed=overrides["seed"])
    if "alpha" in overrides or "tau" in overrides:
        loss = replace(pretrain.loss, **{k: float(overrides[k]) for k in ("alpha", "tau") if k in overrides})
        pretrain = replace(pretrain, loss=loss)
    if "mode" in overrides:
        pretrain = replace(pretrain, mode=overrides["mode"])
    if "epochs" in overrides:
        pretrain = replace(pretrain, epochs=overrides["epochs"])
    if "mil_kind" in overrides:
        mil = replace(mil, kind=overrides["mil_kind"])
    return replace(
        cfg,
        pretrain=pretrain,
        mil_train=mil_train,
        mil=mil,
        repeats=overrides.get("repeats", cfg.repeats),
        output_dir=overrides.get("out", cfg.output_dir),
    )


def load_run_config(path=None, overrides=None):
    """
    Defaults, then the JSON file at path (if any), then CLI overrides.

    Returns:
        RunConfig: Validated configuration
    """
    data = {}
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"config {path} is not valid JSON: {e.msg} at line {e.lineno}", field="config") from None
    cfg = apply_overrides(build_dataclass(RunConfig, data), overrides)
    logger.info(f"Resolved configuration (hash {cfg.hash()[:12]})")
    return cfg


__all__ = ["RunConfig", "apply_overrides", "build_dataclass", "load_run_config"]
