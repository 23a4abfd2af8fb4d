"""Splittable random streams.

numpy's SeedSequence provides the reproducible spawning; the draws
themselves come from the stdlib Mersenne generator, which is faster for
the one-float-at-a-time access pattern of playouts.
"""
from __future__ import annotations

import random

import numpy as np


class RngStream:
    __slots__ = ("_seq", "_rand")

    def __init__(self, seed: int | None, _seq: np.random.SeedSequence | None = None):
        self._seq = _seq if _seq is not None else np.random.SeedSequence(seed)
        words = self._seq.generate_state(2, np.uint64)
        self._rand = random.Random((int(words[0]) << 64) | int(words[1]))

    def random(self) -> float:
        """Uniform draw in [0, 1)."""
        return self._rand.random()

    def spawn(self, n: int) -> list["RngStream"]:
        """Mint n independent child streams without consuming any draws.

        Children depend only on the parent seed and how many spawns came
        before, so they are reproducible and safe to hand to workers.
        """
        return [RngStream(None, _seq=child) for child in self._seq.spawn(n)]

    def __repr__(self) -> str:
        return f"RngStream(entropy={self._seq.entropy!r})"
