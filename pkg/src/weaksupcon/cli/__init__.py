from weaksupcon.cli.checkpoint_io import load_checkpoint, save_checkpoint
from weaksupcon.cli.config import RunConfig, load_run_config
from weaksupcon.cli.run_manifest import read_manifest, run_manifest

__all__ = ["RunConfig", "load_checkpoint", "load_run_config", "read_manifest", "run_manifest", "save_checkpoint"]
