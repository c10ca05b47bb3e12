import dataclasses
import hashlib
import json
from pathlib import Path

import numpy as np


def _encode(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return dataclasses.asdict(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, (np.ndarray, set, frozenset)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj):
    """Sorted-key compact JSON; dataclasses are expanded to dicts."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_encode)


def config_hash(obj):
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def file_sha256(path):
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()
