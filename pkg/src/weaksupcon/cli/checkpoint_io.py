"""
Checkpoint file, little-endian:

    magic "WSCK" | version u8 = 1 | header length u32 | UTF-8 JSON header
    then every tensor's float32 values in header manifest order

The header holds architecture, seed, epoch, provenance and the tensor
manifest ([{"name", "shape"}, ...]).
"""

import json
import logging
import struct
from pathlib import Path

import numpy as np

from weaksupcon.common.checkpoint import Checkpoint
from weaksupcon.common.errors import ArchitectureError, FormatError

# Configure logging
logger = logging.getLogger(__name__)

MAGIC = b"WSCK"
VERSION = 1
HEADER_KEYS = {"architecture", "seed", "epoch", "tensors", "provenance"}


def save_checkpoint(path, checkpoint):
    """
    Write checkpoint to path with float32 parameter storage.

    Returns:
        Path: The written file
    """
    try:
        manifest = [{"name": name, "shape": list(np.shape(value))} for name, value in checkpoint.params.items()]
        header = json.dumps(
            {
                "architecture": checkpoint.architecture,
                "seed": checkpoint.seed,
                "epoch": checkpoint.epoch,
                "tensors": manifest,
                "provenance": checkpoint.provenance,
            },
            sort_keys=True,
        ).encode("utf-8")
        blobs = [np.ascontiguousarray(value, dtype="<f4").tobytes() for value in checkpoint.params.values()]

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(MAGIC + struct.pack("<BI", VERSION, len(header)) + header + b"".join(blobs))
        logger.info(f"Saved checkpoint with {len(manifest)} tensors to {path}")
        return path

    except Exception as e:
        logger.error(f"Error saving checkpoint: {str(e)}")
        raise


def _parse_header(payload):
    if payload[:4] != MAGIC:
        raise FormatError(f"bad magic {payload[:4]!r}, expected {MAGIC!r}", 0, expected=MAGIC.decode(), actual=payload[:4].decode("latin-1"))
    if len(payload) < 9:
        raise FormatError("truncated checkpoint header", len(payload), expected=9, actual=len(payload))
    version, header_length = struct.unpack("<BI", payload[4:9])
    if version != VERSION:
        raise FormatError(f"unsupported checkpoint version {version}", 4, expected=VERSION, actual=version)
    if len(payload) < 9 + header_length:
        raise FormatError("truncated checkpoint header", 9, expected=header_length, actual=len(payload) - 9)
    try:
        header = json.loads(payload[9:9 + header_length].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError):
        raise FormatError("checkpoint header is not valid JSON", 9) from None
    return header, 9 + header_length


def load_checkpoint(path, expected_architecture=None, expected_config_hash=None):
    """
    Read a checkpoint written by save_checkpoint.

    Args:
        path (str | Path): Checkpoint file
        expected_architecture (dict): When given, a differing architecture is
            an error
        expected_config_hash (str): When given, a differing hash is a warning

    Returns:
        Checkpoint: Parameters as float64 arrays holding the stored float32 values
    """
    try:
        payload = Path(path).read_bytes()
        header, offset = _parse_header(payload)
        missing = sorted(HEADER_KEYS - set(header))
        if missing:
            raise FormatError(f"checkpoint header lacks {missing}", 9)
        extra = sorted(set(header) - HEADER_KEYS)
        if extra:
            logger.warning(f"Checkpoint {path} has unknown header fields {extra}; ignoring them")

        sizes = [int(np.prod(entry["shape"], dtype=np.int64)) for entry in header["tensors"]]
        expected_bytes = 4 * sum(sizes)
        actual_bytes = len(payload) - offset
        if expected_bytes != actual_bytes:
            raise FormatError(
                f"tensor data length mismatch: manifest needs {expected_bytes} bytes, file has {actual_bytes}",
                offset,
                expected=expected_bytes,
                actual=actual_bytes,
            )
        params = {}
        for entry, size in zip(header["tensors"], sizes):
            values = np.frombuffer(payload, dtype="<f4", count=size, offset=offset)
            params[entry["name"]] = values.reshape(entry["shape"]).astype(np.float64)
            offset += 4 * size

        if expected_architecture is not None and header["architecture"] != expected_architecture:
            raise ArchitectureError(
                f"checkpoint architecture {header['architecture']} does not match expected {expected_architecture}",
                expected=expected_architecture,
                actual=header["architecture"],
            )
        actual_hash = header["provenance"].get("config_hash")
        if expected_config_hash is not None and actual_hash != expected_config_hash:
            logger.warning(f"Checkpoint {path} was trained with config hash {actual_hash}, current config is {expected_config_hash}")

        return Checkpoint(
            architecture=header["architecture"],
            seed=header["seed"],
            epoch=header["epoch"],
            params=params,
            provenance=header["provenance"],
        )

    except Exception as e:
        logger.error(f"Error loading checkpoint {path}: {str(e)}")
        raise
