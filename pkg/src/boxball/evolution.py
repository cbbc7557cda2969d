"""Carrier transport and the one-step box-ball evolution."""

from __future__ import annotations

import enum
from typing import Union

from .config import BallConfig


class Infinite(enum.Enum):
    """Capacity of a carrier that never fills up."""

    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Infinite.INF
Capacity = Union[int, Infinite]


def parse_capacity(text: str | int | Infinite) -> Capacity:
    if text is INF or isinstance(text, int):
        return check_capacity(text)
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "oo", "∞"):
        return INF
    try:
        value = int(t)
    except ValueError:
        raise ValueError(f"capacity must be a positive integer or 'inf', got {text!r}") from None
    return check_capacity(value)


def check_capacity(cap: Capacity) -> Capacity:
    if cap is INF:
        return cap
    if isinstance(cap, bool) or not isinstance(cap, int) or cap < 1:
        raise ValueError(f"capacity must be a positive integer or INF, got {cap!r}")
    return cap


def capacity_min(k: int, cap: Capacity) -> int:
    """``min(k, cap)`` with INF acting as +infinity."""
    return k if cap is INF else min(k, cap)


def format_capacity(cap: Capacity) -> str:
    return "inf" if cap is INF else str(cap)


def carrier_trace(cfg: BallConfig, cap: Capacity, window: int | None = None) -> list[int]:
    """Carrier loads ``W(0), W(1), ..., W(window)``.

    The carrier picks up a ball whenever it has room and drops one at every
    vacant site while loaded.
    """
    check_capacity(cap)
    if window is None:
        window = len(cfg)
    top = -1 if cap is INF else cap
    loads = [0] * (window + 1)
    w = 0
    for x, b in enumerate(cfg.window_bits(window), start=1):
        if b:
            if w != top:
                w += 1
        elif w:
            w -= 1
        loads[x] = w
    return loads


def evolve(cfg: BallConfig, cap: Capacity = INF) -> BallConfig:
    """One time step ``T_cap``; the window grows by the ball count."""
    window = len(cfg) + cfg.ball_count
    loads = carrier_trace(cfg, cap, window)
    bits = cfg.window_bits(window)
    return BallConfig(tuple(b + loads[x] - loads[x + 1] for x, b in enumerate(bits)))


def evolve_n(cfg: BallConfig, cap: Capacity, steps: int) -> list[BallConfig]:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    out = [cfg]
    for _ in range(steps):
        out.append(evolve(out[-1], cap))
    return out
