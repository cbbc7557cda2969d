"""Ball configurations on the half line.

Sites are 1-indexed. Site 0 is a virtual site that is always vacant, and
every site past the explicit window holds no ball.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np


class ParseError(ValueError):
    """Raised when a configuration string contains an illegal character."""

    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"illegal character {char!r} at position {position}")


@dataclass(frozen=True)
class BallConfig:
    """A finite 0/1 configuration; ``bits[0]`` is site 1."""

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        bits = tuple(map(int, self.bits))
        if not set(bits) <= {0, 1}:
            raise ValueError("configuration entries must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_sites(cls, sites: Iterable[int], length: int | None = None) -> "BallConfig":
        sites = sorted(set(sites))
        if sites and sites[0] < 1:
            raise ValueError("ball sites are 1-indexed")
        n = max(sites[-1] if sites else 0, length or 0)
        bits = [0] * n
        for x in sites:
            bits[x - 1] = 1
        return cls(tuple(bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, x: int) -> int:
        if 1 <= x <= len(self.bits):
            return self.bits[x - 1]
        return 0

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def length(self) -> int:
        return len(self.bits)

    @property
    def ball_count(self) -> int:
        return sum(self.bits)

    @property
    def sites(self) -> list[int]:
        return [x for x, b in enumerate(self.bits, start=1) if b]

    @property
    def last_ball(self) -> int:
        """Position of the rightmost ball, 0 when empty."""
        for x in range(len(self.bits), 0, -1):
            if self.bits[x - 1]:
                return x
        return 0

    @property
    def safe_length(self) -> int:
        """Smallest window that is guaranteed to end in a record.

        A carrier of unbounded capacity holding ``c`` balls is empty after at
        most ``c`` vacant sites, so ``last_ball + ball_count + 1`` is a record.
        """
        return self.last_ball + self.ball_count + 1

    def window_bits(self, length: int) -> tuple[int, ...]:
        """Bits of sites 1..length, zero-filled past the configuration."""
        return self.bits[:length] + (0,) * max(0, length - len(self.bits))

    def padded(self, length: int) -> "BallConfig":
        """Resize the window to ``length``; never drops a ball."""
        if length < self.last_ball:
            raise ValueError(f"window {length} would truncate ball at {self.last_ball}")
        bits = self.bits[:length] + (0,) * max(0, length - len(self.bits))
        return BallConfig(bits)

    def stripped(self) -> "BallConfig":
        return BallConfig(self.bits[: self.last_ball])

    def same_balls(self, other: "BallConfig") -> bool:
        """Equality up to trailing zeros."""
        return self.stripped().bits == other.stripped().bits


def parse(text: str) -> BallConfig:
    bits = []
    for pos, ch in enumerate(text, start=1):
        if ch in "01":
            bits.append(int(ch))
        elif not ch.isspace():
            raise ParseError(ch, pos)
    return BallConfig(tuple(bits))


def render(cfg: BallConfig, window: int | None = None) -> str:
    """0/1 string of exactly ``window`` characters (default: the config's own)."""
    if window is None:
        window = len(cfg)
    if window < cfg.last_ball:
        raise ValueError(f"window {window} would truncate ball at {cfg.last_ball}")
    return "".join(str(cfg[x]) for x in range(1, window + 1))


def random_config(length: int, density: float, seed: int) -> BallConfig:
    """Independent Bernoulli(density) sites drawn from numpy's PCG64 stream."""
    if length < 0:
        raise ValueError("length must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    rng = np.random.Generator(np.random.PCG64(seed & 0xFFFF_FFFF_FFFF_FFFF))
    draws = rng.random(length)
    return BallConfig(tuple(int(u < density) for u in draws))
