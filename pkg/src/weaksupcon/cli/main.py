"""
Command-line entry point.

    python -m weaksupcon.cli.main <command> [--config PATH] [overrides]

Each command runs one pipeline step, re-reads its outputs and writes
manifest_<command>.json into the run directory. Failures are printed as one
JSON line on stderr.
"""

import argparse
import dataclasses
import json
import logging
import os
import sys
import time
import traceback

from weaksupcon.cli.config import load_run_config
from weaksupcon.cli.gen_data import gen_data
from weaksupcon.cli.run_ablate import run_ablate
from weaksupcon.cli.run_analyze import run_analyze
from weaksupcon.cli.run_eval import run_eval
from weaksupcon.cli.run_extract import run_extract
from weaksupcon.cli.run_manifest import run_manifest, utc_now
from weaksupcon.cli.run_pretrain import run_pretrain
from weaksupcon.cli.run_train_mil import run_train_mil
from weaksupcon.cli.validate_artifacts import validate_artifacts
from weaksupcon.common.errors import ArchitectureError, ConfigError, DataError, FormatError, WeakSupConError
from weaksupcon.losses.config import LossConfig
from weaksupcon.milmodels.spec import MIL_KINDS
from weaksupcon.representation.specs import PRETRAIN_MODES

# Configure logging
logger = logging.getLogger(__name__)

COMMANDS = {
    "gen-data": gen_data,
    "pretrain": run_pretrain,
    "extract": run_extract,
    "train-mil": run_train_mil,
    "eval": run_eval,
    "analyze": run_analyze,
    "ablate": run_ablate,
}
EXIT_CODES = {"COMPLETED": 0, "INVALID_REQUEST": 2, "FORMAT_ERROR": 3, "FAILED": 1}


def handler(event, context=None):
    """
    Run one command.

    Args:
        event (dict): {"command": ..., "config": path or None, "overrides": {...}}
        context (object): Unused; kept for the handler signature

    Returns:
        dict: Response with status, artifacts and manifest path
    """
    command = event.get("command", "unknown")

    try:
        logger.info(f"Processing command request: {json.dumps(event)}")
        step = COMMANDS[event["command"]]
        cfg = load_run_config(event.get("config"), event.get("overrides"))

        started_at = utc_now()
        clock = time.perf_counter()
        artifacts = step(cfg)
        validate_artifacts(artifacts)
        manifest = run_manifest(
            cfg.output_dir,
            command,
            dataclasses.asdict(cfg),
            cfg.pretrain_seeds() + cfg.mil_seeds(),
            artifacts,
            started_at,
            time.perf_counter() - clock,
        )

        logger.info(f"Command {command} completed with {len(artifacts)} artifacts")
        return {
            "command": command,
            "status": "COMPLETED",
            "artifacts": [str(p) for p in artifacts],
            "manifest": str(manifest),
        }

    except KeyError as e:
        logger.error(f"Unknown command or missing parameter: {str(e)}")
        return create_error_response(command, e, "INVALID_REQUEST", f"Unknown command or missing parameter: {str(e)}")
    except (ConfigError, DataError, ArchitectureError, FileNotFoundError) as e:
        logger.error(f"Invalid request: {str(e)}")
        return create_error_response(command, e, "INVALID_REQUEST", "Invalid configuration or missing input")
    except FormatError as e:
        logger.error(f"Format error: {str(e)}")
        return create_error_response(command, e, "FORMAT_ERROR", "Unreadable or corrupt artifact")
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}")
        logger.error(f"Traceback: {traceback.format_exc()}")
        return create_error_response(command, e, "FAILED", f"Error running {command}")


def create_error_response(command, exception, status, message):
    """Helper function to create standardized error responses"""
    response = {
        "command": command,
        "error": str(exception),
        "status": status,
        "message": message,
        "error_type": type(exception).__name__,
    }
    if isinstance(exception, WeakSupConError):
        response["code"] = exception.code
        response["details"] = exception.details
    return response


def build_parser():
    parser = argparse.ArgumentParser(prog="weaksupcon", description="Weakly supervised contrastive pretraining for MIL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--config", help="JSON run configuration")
        sub.add_argument("--seed", type=int)
        sub.add_argument("--alpha", type=float, help=f"Similarity Loss weight (default {LossConfig.alpha})")
        sub.add_argument("--tau", type=float, help=f"temperature (default {LossConfig.tau})")
        sub.add_argument("--mode", choices=PRETRAIN_MODES)
        sub.add_argument("--mil-kind", dest="mil_kind", choices=MIL_KINDS)
        sub.add_argument("--out", help="run directory")
        sub.add_argument("--repeats", type=int)
        sub.add_argument("--epochs", type=int, help="pretraining epochs")
    return parser


def main(argv=None):
    logging.basicConfig(
        level=os.environ.get("WSC_LOG_LEVEL", "INFO").upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    config = args.pop("config")
    response = handler({"command": command, "config": config, "overrides": args})
    if response["status"] != "COMPLETED":
        print(json.dumps(response, default=str), file=sys.stderr)
    return EXIT_CODES[response["status"]]


if __name__ == "__main__":
    sys.exit(main())
