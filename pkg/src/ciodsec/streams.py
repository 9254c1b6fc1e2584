"""Reproducible random substreams derived from a single master seed.

Every stochastic stage of a run (source bits, the two channels, the jamming
scalar, the two receiver noises, mutual-information noise samples) draws from
its own counter-based Philox stream keyed by (master seed, purpose, indices).
Streams depend only on those keys, never on worker layout, so any partition
of the work across processes replays identical randomness.
"""

from __future__ import annotations

import numpy as np

PURPOSES = (
    "bits",
    "channel_bob",
    "channel_eve",
    "an",
    "noise_bob",
    "noise_eve",
    "mi",
)
_CODES = {name: code for code, name in enumerate(PURPOSES)}


def substream(master_seed: int, purpose: str, *indices: int) -> np.random.Generator:
    """Return the Philox generator for (master_seed, purpose, *indices)."""
    if purpose not in _CODES:
        raise ValueError(f"unknown stream purpose {purpose!r}")
    seq = np.random.SeedSequence(
        entropy=int(master_seed), spawn_key=(_CODES[purpose], *map(int, indices))
    )
    return np.random.Generator(np.random.Philox(seq))


def complex_normal(rng: np.random.Generator, shape, var: float = 1.0) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples, total variance `var` per entry."""
    scale = np.sqrt(var / 2.0)
    return scale * rng.standard_normal(shape) + 1j * scale * rng.standard_normal(shape)
