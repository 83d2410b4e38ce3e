"""Portable deterministic PRNG: splitmix64-seeded xoshiro256**.

Reference algorithms by Blackman and Vigna (public domain). Both are
implemented on 64-bit unsigned arithmetic so that any two runs, on any
platform, draw identical streams from the same seed. Nothing in this
package uses the stdlib `random` module for results that must reproduce.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB


def splitmix64_mix(state: int) -> int:
    """The splitmix64 output function applied to a raw state word."""
    z = state & MASK64
    z = ((z ^ (z >> 30)) * _SM_MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _SM_MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix64_at(seed: int, index: int) -> int:
    """The index-th output (0-based) of the splitmix64 stream started at seed.

    Closed form: the stream's k-th state is seed + (k+1)*gamma, so any
    element can be computed without drawing its predecessors. Used to derive
    per-game seeds that do not depend on how trials are batched.
    """
    return splitmix64_mix((seed + (index + 1) * _SM_GAMMA) & MASK64)


class SplitMix64:
    """Sequential splitmix64 stream; also the seeder for Xoshiro256StarStar."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + _SM_GAMMA) & MASK64
        return splitmix64_mix(self.state)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    """xoshiro256** with the recommended splitmix64 state fill."""

    def __init__(self, seed: int):
        sm = SplitMix64(seed)
        self.s0 = sm.next()
        self.s1 = sm.next()
        self.s2 = sm.next()
        self.s3 = sm.next()

    def next(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling.

        Always consumes at least one draw, even for n == 1, so that every
        consumer advances the stream identically.
        """
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = MASK64 + 1 - ((MASK64 + 1) % n)
        while True:
            draw = self.next()
            if draw < limit:
                return draw % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, iterating from the high index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        return items[self.randbelow(len(items))]
