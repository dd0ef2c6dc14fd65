"""Deterministic seeding and the in-game random stream.

Replica seeds are derived from (base_seed, index) with SplitMix64
(Steele, Lea & Flood, "Fast splittable pseudorandom number generators",
OOPSLA 2014). The same generator, stepped by the golden-gamma increment,
drives every stochastic choice inside a game replica. Using one published,
dependency-free mixer keeps batches bit-reproducible from the integers
recorded in a run manifest, independent of worker count or schedule.
"""

import numpy as np
from numba import njit

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL_1 = 0xBF58476D1CE4E5B9
MIX_MUL_2 = 0x94D049BB133111EB

_U_GAMMA = np.uint64(GOLDEN_GAMMA)
_U_MUL1 = np.uint64(MIX_MUL_1)
_U_MUL2 = np.uint64(MIX_MUL_2)


def mix64(base_seed: int, index: int) -> int:
    """Derive the stream seed for replica `index` of a batch keyed by `base_seed`."""
    z = (base_seed + (index + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


@njit(cache=True, inline="always")
def next_u64(state):
    """Advance a SplitMix64 stream held in a one-element uint64 array."""
    state[0] = state[0] + _U_GAMMA
    z = state[0]
    z = (z ^ (z >> np.uint64(30))) * _U_MUL1
    z = (z ^ (z >> np.uint64(27))) * _U_MUL2
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def rand_below(state, n):
    """Uniform integer in [0, n). Modulo bias is < n/2**64, irrelevant here."""
    return int(next_u64(state) % np.uint64(n))


@njit(cache=True, inline="always")
def rand_unit(state):
    """Uniform float64 in [0, 1) with 53 random bits."""
    return float(next_u64(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


class GameRng:
    """Mutable stream handle passed to the engine's step-level operations.

    Wraps the uint64 state array the jitted kernels consume, so Python-level
    calls and the fused jitted game loop draw from one identical stream.
    """

    def __init__(self, seed: int):
        self.state = np.array([seed & MASK64], dtype=np.uint64)

    def next_u64(self) -> int:
        return int(next_u64(self.state))

    def below(self, n: int) -> int:
        return int(rand_below(self.state, n))

    def unit(self) -> float:
        return float(rand_unit(self.state))

    def copy(self) -> "GameRng":
        clone = GameRng(0)
        clone.state = self.state.copy()
        return clone
