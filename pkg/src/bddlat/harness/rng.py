"""SplitMix64: the fixed PRNG behind every seeded draw in the harness.

Chosen because its output is defined bit-for-bit by a few 64-bit integer
operations, so a seed reproduces the same stream in any language.
Per-instance generators are derived with :func:`derive_seed`, which folds
the parts through the SplitMix64 finalizer.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Hash a tuple of integers (e.g. config seed, spec index, trial index) to one seed."""
    h = 0
    for p in parts:
        h = mix64((h + GOLDEN + (int(p) & MASK64)) & MASK64)
    return h


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound > 1 << 64:
            raise ValueError("bound exceeds 2^64")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)
