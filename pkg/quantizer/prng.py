"""splitmix64 generator.

Plain integer arithmetic so that any implementation seeded with the same
value produces the same stream, independent of numpy's bit generators.
"""
from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)


class SplitMix64:
    """Stateful splitmix64 stream.

    Attributes:
        state: Current 64-bit state; advances by the golden gamma per draw.
        draws: Number of 64-bit outputs consumed so far.
    """

    def __init__(self, seed: int = 0) -> None:
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed
        self.draws = 0

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        self.draws += 1
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform real in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * _INV_2_53

    def uniform_range(self, low: float, high: float) -> float:
        return low + (high - low) * self.uniform()
