import dataclasses
import datetime
from pathlib import Path

import numpy as np


def _serialize_value(v):
    if isinstance(v, (datetime.datetime, datetime.date)):
        return str(v)
    if isinstance(v, Path):
        return str(v)
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, np.ndarray):
        return v.tolist() if v.size <= 16 else f"<array shape={list(v.shape)}>"
    if dataclasses.is_dataclass(v) and not isinstance(v, type):
        return logger_serialize(dataclasses.asdict(v))
    if isinstance(v, dict):
        return logger_serialize(v)
    if isinstance(v, (list, tuple)):
        return [_serialize_value(x) for x in v]
    return v


def logger_serialize(response):
    return {k: _serialize_value(v) for k, v in response.items()}
