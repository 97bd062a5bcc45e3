"""Deterministic 64-bit pseudo-random generator for reproducible sampling.

SplitMix64 (Steele, Lea & Flood 2014): 64-bit state advanced by the
golden-gamma constant 0x9E3779B97F4A7C15, output mixed with two
xor-shift-multiply rounds (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
Results are identical on every platform and trivially portable to other
languages, which plain ``random.Random`` does not guarantee.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via modulo reduction.

        The modulo bias is below 2**-50 for any bound this pipeline
        uses, and keeping the reduction trivial keeps it portable.
        """
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle, high index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
