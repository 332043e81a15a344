"""Deterministic counter-based random number generation.

All randomness in this package (graph generators, perturbations, run seeds)
flows through :class:`Rng`, a counter-based generator built on the SplitMix64
finalizer.  The i-th raw draw for seed ``s`` is::

    mix64((s + (i + 1) * 0x9E3779B97F4A7C15) mod 2^64)

where ``mix64`` is the SplitMix64 output function

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

Everything is 64-bit integer arithmetic, so sequences are bit-identical
across platforms and easy to reimplement in other languages.  Bounded draws
use rejection sampling (no modulo bias) and floats use the top 53 bits.
Seed 0 is reserved for documentation examples.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class Rng:
    """Counter-based PRNG; a pure function of (seed, draw index)."""

    __slots__ = ("seed", "counter")

    def __init__(self, seed: int, counter: int = 0):
        self.seed = seed & _MASK
        self.counter = counter

    def u64(self) -> int:
        self.counter += 1
        return mix64((self.seed + self.counter * _GAMMA) & _MASK)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("below() requires n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.u64()
            if r < limit:
                return r % n

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.u64() >> 11) * (2.0 ** -53)

    def shuffle(self, xs: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def spawn(self, stream: int) -> "Rng":
        """Independent generator for a numbered substream."""
        return Rng(mix64((self.seed ^ mix64(stream)) & _MASK))
