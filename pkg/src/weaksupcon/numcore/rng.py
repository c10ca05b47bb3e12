"""
Seeded random streams.

A stream is named by (seed, name). The name is hashed with 64-bit FNV-1a and
mixed into the seed; splitmix64 expands the result into xoshiro256** state.
`next_u64` exposes the raw xoshiro256** sequence. Bulk draws (normals,
permutations) come from a numpy PCG64 generator seeded with four words of that
sequence, so every stream is reproducible from its name alone.
"""

import numpy as np

MASK64 = (1 << 64) - 1
STREAM_NAMES = ("data", "augmentation", "init", "shuffle")


def fnv1a64(text):
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & MASK64
    return h


def splitmix64(state):
    """One splitmix64 step: returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Rng:
    """xoshiro256** stream with a lazily attached numpy generator."""

    def __init__(self, seed, name=""):
        self.seed = int(seed) & MASK64
        self.name = name
        state = self.seed ^ fnv1a64(name)
        words = []
        for _ in range(4):
            state, word = splitmix64(state)
            words.append(word)
        self._s = words
        self._generator = None

    def next_u64(self):
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    @property
    def generator(self):
        if self._generator is None:
            self._generator = np.random.Generator(np.random.PCG64([self.next_u64() for _ in range(4)]))
        return self._generator


def derive_rng(seed, *keys):
    """Stream for a composite key such as (seed, "dtfd", epoch, bag_id)."""
    return Rng(seed, "/".join(str(k) for k in keys))


def rng_streams(seed):
    """
    Independent named substreams for one run.

    Args:
        seed (int): Run seed

    Returns:
        dict: Stream name -> Rng for data, augmentation, init and shuffle
    """
    return {name: Rng(seed, name) for name in STREAM_NAMES}
