"""Deterministic, splittable random source.

Every sampling routine in this package draws from an :class:`Rng` so that a
single 64-bit seed pins down the complete artifact byte-for-byte.  The
underlying bit generator is Philox, a counter-based generator whose streams
are stable across platforms.  Independent child streams are derived by
spawn keys rather than by jumping, so ``Rng(seed).split(i)`` is reproducible
regardless of how much randomness the parent consumed.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Rng"]


class Rng:
    """Wrapper around ``numpy.random.Generator`` with explicit split support.

    Parameters
    ----------
    seed : int
        Master seed, reduced mod 2**64.
    path : tuple[int, ...], optional
        Spawn path identifying a child stream.  Users normally leave this
        empty and call :meth:`split`.
    """

    __slots__ = ("seed", "path", "_gen")

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        self.seed = int(seed) % (1 << 64)
        self.path = tuple(int(p) for p in path)
        ss = np.random.SeedSequence(self.seed, spawn_key=self.path)
        self._gen = np.random.Generator(np.random.Philox(ss))

    def split(self, index: int) -> "Rng":
        """Child stream ``index``, independent of this stream's position."""
        return Rng(self.seed, self.path + (int(index),))

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in ``[low, high)``."""
        return int(self._gen.integers(low, high))

    def random(self) -> float:
        return float(self._gen.random())

    def random_array(self, n: int) -> np.ndarray:
        return self._gen.random(n)

    def shuffle(self, seq) -> None:
        """In-place Fisher-Yates shuffle of a mutable sequence."""
        # numpy's Generator.shuffle on python lists goes through object
        # fancy-indexing; doing it by hand keeps the draw count predictable.
        for i in range(len(seq) - 1, 0, -1):
            j = int(self._gen.integers(0, i + 1))
            seq[i], seq[j] = seq[j], seq[i]

    def choice(self, seq):
        return seq[int(self._gen.integers(0, len(seq)))]

    def sample(self, seq, k: int) -> list:
        """k distinct elements, order randomized."""
        pool = list(seq)
        if k > len(pool):
            raise ValueError("sample larger than population")
        self.shuffle(pool)
        return pool[:k]

    def bernoulli_mask(self, n: int, p: float) -> np.ndarray:
        """Boolean array of n independent Bernoulli(p) draws."""
        return self._gen.random(n) < p

    def descriptor(self) -> dict:
        """JSON-serializable identity of this stream (seed plus spawn path)."""
        return {"seed": self.seed, "path": list(self.path)}

    @classmethod
    def from_descriptor(cls, obj: dict) -> "Rng":
        return cls(obj["seed"], tuple(obj.get("path", ())))

    def __repr__(self) -> str:  # pragma: no cover
        return f"Rng(seed={self.seed}, path={self.path})"
