"""
Binary bag store, little-endian throughout.

    magic "WSCF" | version u8 = 1 | dim u32 | num_bags u32
    per bag: bag_id u32 | label u8 | has_mask u8 | n_instances u32
             n_instances x dim float32 | [n_instances bytes of 0/1 if has_mask]
"""

import logging
import struct
from pathlib import Path

import numpy as np

from weaksupcon.common.errors import FormatError
from weaksupcon.mildata.bag import Bag, DatasetSplit

# Configure logging
logger = logging.getLogger(__name__)

MAGIC = b"WSCF"
VERSION = 1


class _Cursor:
    def __init__(self, payload):
        self.payload = payload
        self.offset = 0

    def take(self, count, what):
        remaining = len(self.payload) - self.offset
        if remaining < count:
            raise FormatError(f"truncated feature store while reading {what}: expected {count} bytes, found {remaining}", self.offset, expected=count, actual=remaining)
        chunk = self.payload[self.offset:self.offset + count]
        self.offset += count
        return chunk

    def unpack(self, fmt, what):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt), what))


def write_feature_store(bags, path, dim=None):
    """
    Write bags (a list or a DatasetSplit) to path.

    Args:
        bags (list | DatasetSplit): Bags sharing one instance width
        path (str | Path): Output file
        dim (int): Instance width; required only for an empty bag list

    Returns:
        Path: The written file
    """
    bags = bags.all_bags() if isinstance(bags, DatasetSplit) else list(bags)
    try:
        dim = bags[0].instances.shape[1] if bags else int(dim or 0)
        chunks = [MAGIC, struct.pack("<BII", VERSION, dim, len(bags))]
        for bag in bags:
            if bag.instances.shape[1] != dim:
                raise FormatError(f"bag {bag.id} has width {bag.instances.shape[1]}, store width is {dim}", 0, expected=dim, actual=bag.instances.shape[1])
            has_mask = bag.witness_mask is not None
            chunks.append(struct.pack("<IBBI", bag.id, bag.label, int(has_mask), bag.size))
            chunks.append(np.ascontiguousarray(bag.instances, dtype="<f4").tobytes())
            if has_mask:
                chunks.append(bag.witness_mask.astype(np.uint8).tobytes())

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(b"".join(chunks))
        logger.info(f"Wrote {len(bags)} bags (dim {dim}) to {path}")
        return path

    except Exception as e:
        logger.error(f"Error writing feature store: {str(e)}")
        raise


def read_feature_store(path):
    """
    Read bags written by write_feature_store.

    Returns:
        list: Bags with float64 instances holding the stored float32 values
    """
    try:
        cursor = _Cursor(Path(path).read_bytes())
        magic = cursor.take(4, "magic")
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}", 0, expected=MAGIC.decode(), actual=magic.decode("latin-1"))
        version, dim, num_bags = cursor.unpack("<BII", "header")
        if version != VERSION:
            raise FormatError(f"unsupported feature store version {version}", 4, expected=VERSION, actual=version)

        bags = []
        for _ in range(num_bags):
            bag_id, label, has_mask, n = cursor.unpack("<IBBI", "bag header")
            values = np.frombuffer(cursor.take(4 * n * dim, f"instances of bag {bag_id}"), dtype="<f4")
            mask = np.frombuffer(cursor.take(n, f"witness mask of bag {bag_id}"), dtype=np.uint8).astype(bool) if has_mask else None
            bags.append(Bag(id=bag_id, label=label, instances=values.reshape(n, dim).astype(np.float64), witness_mask=mask))
        if cursor.offset != len(cursor.payload):
            raise FormatError("trailing bytes after last bag", cursor.offset, expected=cursor.offset, actual=len(cursor.payload))
        return bags

    except Exception as e:
        logger.error(f"Error reading feature store {path}: {str(e)}")
        raise
