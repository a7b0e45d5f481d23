"""Counter-based random streams.

Every stochastic routine takes a 64-bit master seed and derives independent
Philox substreams from (seed, *lane indices).  Philox is counter-based, so a
substream is fully determined by its key: the same (config, seed) produces
bit-identical output regardless of how replications are partitioned across
workers.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    # SplitMix64 finalizer; decorrelates consecutive lane indices.
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def substream(seed: int, *lane: int) -> np.random.Generator:
    """Generator for the Philox substream keyed by (seed, *lane)."""
    k0 = _splitmix64(seed & _MASK64)
    k1 = k0
    for i, idx in enumerate(lane):
        k1 = _splitmix64(k1 ^ _splitmix64((idx & _MASK64) + i + 1))
    bitgen = np.random.Philox(key=(k0, k1))
    return np.random.Generator(bitgen)
