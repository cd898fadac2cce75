"""Seeded, splittable random streams.

Every sampling routine in the package takes an explicit ``rng`` argument: an
int seed or a ``numpy.random.Generator``.  Seeds are expanded through the
counter-based Philox generator, so parallel workers can derive independent
streams from (seed, worker_index) without coordination.
"""

from __future__ import annotations

import numpy as np

__all__ = ["make_rng", "as_rng", "worker_rng"]


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Deterministic generator for (seed, stream)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def as_rng(rng) -> np.random.Generator:
    """Accept an int seed or a Generator; ints map through make_rng."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, (int, np.integer)):
        return make_rng(int(rng))
    raise TypeError(f"rng must be an int seed or numpy Generator, got {type(rng)!r}")


def worker_rng(seed: int, worker_index: int) -> np.random.Generator:
    """Independent stream for one worker of a parallel experiment."""
    return make_rng(seed, stream=worker_index + 1)
