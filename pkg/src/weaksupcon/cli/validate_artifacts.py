import logging
from pathlib import Path

from weaksupcon.cli.checkpoint_io import load_checkpoint
from weaksupcon.cli.csv_reports import read_csv
from weaksupcon.common.errors import FormatError
from weaksupcon.mildata.feature_store import read_feature_store

# Configure logging
logger = logging.getLogger(__name__)


def validate_artifacts(paths):
    """Re-read every written artifact; any unreadable file is a FormatError."""
    for path in map(Path, paths):
        if not path.is_file():
            raise FormatError(f"declared output {path} was not written", 0)
        if path.suffix == ".wscf":
            read_feature_store(path)
        elif path.suffix == ".wsck":
            load_checkpoint(path)
        elif path.suffix == ".csv" and not read_csv(path):
            raise FormatError(f"report {path} has no data rows", 0)
    logger.info(f"Validated {len(paths)} artifacts")
