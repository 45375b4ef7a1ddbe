"""Deterministic random streams.

Every stochastic component draws from a named substream of a single
top-level seed. Substreams are independent (distinct ``spawn_key`` children
of the same :class:`numpy.random.SeedSequence`), so adding draws to one
component never perturbs another and whole runs replay bit-identically.
"""

from __future__ import annotations

import numpy as np

# Stable substream indices; order here is part of the reproducibility
# contract and must not be rearranged.
STREAM_NAMES = {
    "init": 0,      # network weight initialization
    "shuffle": 1,   # per-epoch batch shuffling
    "dropout": 2,   # dropout masks during training
    "synth": 3,     # synthetic household generator
}


def substream(seed: int, name: str) -> np.random.Generator:
    """Return the generator for one named substream of ``seed``."""
    try:
        key = STREAM_NAMES[name]
    except KeyError:
        raise ValueError(
            f"unknown stream name {name!r}; expected one of {sorted(STREAM_NAMES)}"
        ) from None
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))
