"""Seeded random streams.

Every stream is a :class:`numpy.random.Generator` over PCG64 seeded from a
:class:`numpy.random.SeedSequence`. A 64-bit unsigned seed plus an optional
spawn path (for example a shot index) fully determines the stream, so shot
experiments replay bit-for-bit on any platform numpy supports.

Measurement consumes exactly one ``Generator.random()`` draw per call.
"""
from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int | np.random.Generator | None = 0, *path: int) -> np.random.Generator:
    """Return a generator for ``seed`` and an optional integer spawn path.

    Passing an existing generator returns it unchanged, which lets callers
    thread one stream through several calls.
    """
    if isinstance(seed, np.random.Generator):
        if path:
            raise ValueError("cannot derive a child stream from a live generator")
        return seed
    if seed is None:
        seed = 0
    if not 0 <= int(seed) <= SEED_MASK:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))


def shot_rng(seed: int, shot: int) -> np.random.Generator:
    """Independent stream for shot number ``shot`` of a run seeded with ``seed``."""
    return make_rng(seed, shot)
