"""Stable seed derivation for reproducible sampling pipelines.

Python's builtin hash() is salted per process, so derived seeds go through
blake2b instead. Identical (seed, labels) always give the identical child
seed, on any platform.
"""

from __future__ import annotations

import hashlib


def derive_seed(seed: int, *labels) -> int:
    """Derive a child seed from a parent seed and a tuple of labels."""
    h = hashlib.blake2b(digest_size=8)
    h.update(repr((int(seed),) + tuple(labels)).encode())
    return int.from_bytes(h.digest(), "big")
