"""Seed discipline: one master seed, counter-based per-task splits.

Every randomized routine takes a master seed (u64 or ``None``) and derives
child generators as ``rng_for(seed, *path)`` where ``path`` is a tuple of
small integers identifying the consumer (e.g. trial index). Identical
(seed, path) always yields the identical generator, so individual trials
are reproducible without replaying their predecessors.
"""

from __future__ import annotations

import numpy as np


def rng_for(seed: int | None, *path: int) -> np.random.Generator:
    """Child generator for `path` under `seed` (PCG64 via SeedSequence)."""
    if seed is None:
        return np.random.default_rng()
    entropy = [int(seed)] + [int(p) for p in path]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
