import json
import logging
from datetime import datetime
from pathlib import Path

from dateutil import parser as date_parser
from dateutil import tz

from weaksupcon.common.hashing import file_sha256

# Configure logging
logger = logging.getLogger(__name__)


def utc_now():
    return datetime.now(tz.tzutc())


def run_manifest(output_dir, command, config, seeds, artifacts, started_at, wall_time):
    """
    Record what a command did.

    Args:
        output_dir (str | Path): Run directory (created when missing)
        command (str): Subcommand name
        config (dict): Resolved configuration
        seeds (list): Seeds consumed
        artifacts (list): Paths of written artifacts
        started_at (datetime): Start time (timezone aware)
        wall_time (float): Duration in seconds

    Returns:
        Path: The manifest file, manifest_<command>.json
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "command": command,
        "config": config,
        "seeds": list(seeds),
        "artifacts": [
            {"path": str(Path(p).relative_to(output_dir)) if Path(p).is_relative_to(output_dir) else str(p), "sha256": file_sha256(p)}
            for p in artifacts
        ],
        "timing": {"started_at": started_at.isoformat(), "wall_time_seconds": wall_time},
    }
    path = output_dir / f"manifest_{command}.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote manifest {path} ({len(artifacts)} artifacts)")
    return path


def read_manifest(path):
    manifest = json.loads(Path(path).read_text(encoding="utf-8"))
    manifest["timing"]["started_at"] = date_parser.isoparse(manifest["timing"]["started_at"])
    return manifest
