"""Portable deterministic random number generation.

Everything seeded in this toolkit (attack position sampling, homograph
choice, corpus shuffling) goes through the splitmix64 generator defined
here, so any reimplementation in another language can reproduce the exact
byte output of a run. The algorithm, in full:

state update:   state = (state + 0x9E3779B97F4A7C15) mod 2^64
output (mix):   z = state
                z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
                z = (z XOR (z >> 27)) * 0x94D049BB133111EB  mod 2^64
                z = z XOR (z >> 31)

Bounded draws use rejection sampling (see ``SplitMix64.below``), and
per-sample seeds derive from the root seed via ``derive_seed`` so that
corpus-level work is independent of processing order and worker count.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer: avalanche a 64-bit value."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(root_seed: int, index: int) -> int:
    """Per-sample seed: the (index+1)-th raw output of splitmix64(root_seed).

    Computed in closed form, so sample i's stream is reachable without
    generating streams 0..i-1.
    """
    return mix64((root_seed + (index + 1) * _GOLDEN_GAMMA) & _MASK64)


class SplitMix64:
    """Deterministic 64-bit generator with unbiased bounded draws."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN_GAMMA) & _MASK64
        return mix64(self._state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection sampling.

        Draws are rejected while they fall in the truncated top range
        (2^64 - 2^64 mod bound .. 2^64), which keeps the result exactly
        uniform; the expected number of draws is < 2 for any bound.
        """
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % bound)
        while True:
            r = self.next_uint64()
            if r < limit:
                return r % bound

    def sample_without_replacement(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), via partial Fisher-Yates.

        The selection order is part of the portable contract: swap slot i
        with slot i + below(n - i) for i in 0..k-1 and take the first k.
        """
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle using the same swap rule."""
        n = len(items)
        for i in range(n - 1):
            j = i + self.below(n - i)
            items[i], items[j] = items[j], items[i]
