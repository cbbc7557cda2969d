"""Carrier with numbered seats and the seat number configuration.

Every site gets exactly one mark: ``+k`` when a ball boards seat ``k`` (a
``(k, up)``-seat), ``-k`` when the ball in seat ``k`` alights (a
``(k, down)``-seat), or ``0`` for a record (vacant site, empty carrier).
Everything else in this module is derived from those marks by prefix sums.
"""

from __future__ import annotations

import heapq
import math
import operator
from itertools import accumulate, compress, repeat
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

from .config import BallConfig

Sigma = Literal["up", "down"]
INFINITY = math.inf


def _check_sigma(sigma: str) -> Sigma:
    if sigma not in ("up", "down"):
        raise ValueError(f"sigma must be 'up' or 'down', got {sigma!r}")
    return sigma  # type: ignore[return-value]


def seat_marks(cfg: BallConfig, window: int) -> list[int]:
    """Signed seat index per site 1..window (0 = record).

    Boarding balls take the lowest free seat; alighting balls leave from the
    lowest occupied seat.
    """
    free: list[int] = []
    occupied: list[int] = []
    fresh = 1
    marks = [0] * window
    for x, b in enumerate(cfg.window_bits(window), start=1):
        if b:
            if free:
                k = heapq.heappop(free)
            else:
                k = fresh
                fresh += 1
            heapq.heappush(occupied, k)
            marks[x - 1] = k
        elif occupied:
            k = heapq.heappop(occupied)
            heapq.heappush(free, k)
            marks[x - 1] = -k
    return marks


@dataclass(frozen=True)
class SeatTrace:
    """Seat occupancy ``occupancy[k-1][x]`` for seats 1..K and sites 0..L."""

    occupancy: tuple[tuple[int, ...], ...]
    length: int

    @property
    def seats(self) -> int:
        return len(self.occupancy)

    def __call__(self, k: int, x: int) -> int:
        if k < 1 or k > len(self.occupancy):
            return 0
        return self.occupancy[k - 1][x]

    def load(self, cap, x: int) -> int:
        """Number of occupied seats among the first ``cap``."""
        top = len(self.occupancy) if not isinstance(cap, int) else min(cap, len(self.occupancy))
        return sum(self.occupancy[k][x] for k in range(top))


def seat_trace(cfg: BallConfig, window: int | None = None) -> SeatTrace:
    if window is None:
        window = len(cfg)
    marks = seat_marks(cfg, window)
    K = cfg.ball_count
    rows = []
    for k in range(1, K + 1):
        row = [0] * (window + 1)
        w = 0
        for x in range(1, window + 1):
            m = marks[x - 1]
            if m == k:
                w = 1
            elif m == -k:
                w = 0
            row[x] = w
        rows.append(tuple(row))
    return SeatTrace(tuple(rows), window)


@dataclass(frozen=True)
class SeatNumberConfig:
    """Seat number configuration of ``config`` on sites ``1..length``."""

    config: BallConfig
    marks: tuple[int, ...]
    length: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "length", len(self.marks))

    # -- support sets --------------------------------------------------

    @cached_property
    def max_level(self) -> int:
        return max((abs(m) for m in self.marks), default=0)

    @cached_property
    def up(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, m in enumerate(self.marks, start=1):
            if m > 0:
                out.setdefault(m, []).append(x)
        return {k: tuple(v) for k, v in sorted(out.items())}

    @cached_property
    def down(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, m in enumerate(self.marks, start=1):
            if m < 0:
                out.setdefault(-m, []).append(x)
        return {k: tuple(v) for k, v in sorted(out.items())}

    @cached_property
    def records(self) -> tuple[int, ...]:
        return tuple(x for x, m in enumerate(self.marks, start=1) if m == 0)

    @cached_property
    def closed(self) -> bool:
        """True when the carrier is empty after the last site.

        Past a closed window every site is a record.
        """
        return sum(1 if m > 0 else -1 if m < 0 else 0 for m in self.marks) == 0

    def mark(self, x: int) -> int:
        if 1 <= x <= self.length:
            return self.marks[x - 1]
        if x > self.length and self.closed:
            return 0
        raise IndexError(f"site {x} outside window 1..{self.length}")

    def indicator(self, k: int, sigma: Sigma, x: int) -> int:
        m = self.mark(x)
        return int(m == k) if sigma == "up" else int(m == -k)

    def is_record(self, x: int) -> bool:
        return self.mark(x) == 0

    # -- prefix tables ---------------------------------------------------

    def prefix(self, k: int, sigma: Sigma) -> list[int]:
        """``sum_{y<=x} eta^sigma_k(y)`` for x = 0..length."""
        return self._prefix_cache[(k, sigma)] if (k, sigma) in self._prefix_cache else self._build_prefix(k, sigma)

    @cached_property
    def _prefix_cache(self) -> dict:
        return {}

    def _build_prefix(self, k: int, sigma: Sigma) -> list[int]:
        target = k if sigma == "up" else -k
        out = list(accumulate(map(operator.eq, self.marks, repeat(target)), initial=0))
        self._prefix_cache[(k, sigma)] = out
        return out

    def m_table(self, k: int, sigma: Sigma) -> list[int]:
        cache = self._m_cache
        key = (k, sigma)
        if key not in cache:
            sign = 1 if sigma == "up" else -1
            step = {sign * k: 1, sign * (k + 1): -1}
            cache[key] = list(accumulate(map(step.get, self.marks, repeat(0)), initial=0))
        return cache[key]

    @cached_property
    def _m_cache(self) -> dict:
        return {}

    def xi_table(self, k: int) -> list[int]:
        """``xi_k(x)`` for x = 0..length: sites up to x that are not seats <= k."""
        cache = self._xi_cache
        if k not in cache:
            cache[k] = list(accumulate(map(operator.lt, repeat(k), self._levels), initial=0))
        return cache[k]

    @cached_property
    def _levels(self) -> list:
        """Seat level per site, with records above every level."""
        return [abs(m) if m else INFINITY for m in self.marks]

    @cached_property
    def _xi_cache(self) -> dict:
        return {}

    def xi_at(self, k: int, x: int) -> int:
        if x <= self.length:
            return self.xi_table(k)[x]
        if not self.closed:
            raise IndexError(f"site {x} outside open window 1..{self.length}")
        return self.xi_table(k)[self.length] + (x - self.length)

    def occupancy_at(self, x: int) -> set[int]:
        """Occupied seats after the carrier passes site x."""
        occ: set[int] = set()
        for m in self.marks[:x]:
            if m > 0:
                occ.add(m)
            elif m < 0:
                occ.discard(-m)
        return occ

    def slot_sites(self, k: int) -> list[int]:
        """``[0]`` followed by the sites in the window that are not seats <= k."""
        cache = self._slot_cache
        if k not in cache:
            cache[k] = [0] + [x for x, lvl in enumerate(self._levels, start=1) if lvl > k]
        return cache[k]

    @cached_property
    def _slot_cache(self) -> dict:
        return {}

    def tau_table(self, k: int) -> list[int]:
        """Matching points ``tau_k(1), tau_k(2), ...`` inside the window."""
        cache = self._tau_cache
        if k in cache:
            return cache[k]
        mu = self.m_table(k, "up")
        md = self.m_table(k, "down")
        both = compress(range(len(mu)), map(operator.eq, mu, md))
        # reversed so the earliest site wins
        first = {mu[x]: x for x in reversed([x for x in both if mu[x]])}
        taus = []
        while len(taus) + 1 in first:
            taus.append(first[len(taus) + 1])
        cache[k] = taus
        return taus

    @cached_property
    def _tau_cache(self) -> dict:
        return {}


def seat_numbers(cfg: BallConfig, window: int | None = None) -> SeatNumberConfig:
    """Seat marks on ``1..window``; the default window ends in a record."""
    if window is None:
        window = max(len(cfg), cfg.safe_length)
    if window < cfg.last_ball:
        raise ValueError(f"window {window} does not cover ball at {cfg.last_ball}")
    return SeatNumberConfig(cfg.padded(window), tuple(seat_marks(cfg, window)))


def m_value(snc: SeatNumberConfig, k: int, sigma: Sigma, x: int) -> int:
    sigma = _check_sigma(sigma)
    if x == 0:
        return 0
    if x > snc.length:
        x = snc.length if snc.closed else x
        if x > snc.length:
            raise IndexError(f"site {x} outside window")
    return snc.prefix(k, sigma)[x] - snc.prefix(k + 1, sigma)[x]


def tau(snc: SeatNumberConfig, k: int, j: int) -> int | float:
    """j-th leftmost matching point of ``m^up_k`` and ``m^down_k``; INFINITY if none."""
    taus = snc.tau_table(k)
    return taus[j - 1] if 1 <= j <= len(taus) else INFINITY


def xi(snc: SeatNumberConfig, k: int, x: int) -> int:
    return snc.xi_at(k, x)


def s_anchor(snc: SeatNumberConfig, k: int, i: int) -> int | float:
    """First site where ``xi_k`` reaches ``i`` (the i-th k-slot); INFINITY if never."""
    if i == 0:
        return 0
    table = snc.xi_table(k)
    if i <= table[-1]:
        # xi_k increases by 0 or 1 per site, so a linear scan finds the first hit
        for x, v in enumerate(table):
            if v == i:
                return x
    if snc.closed:
        return snc.length + (i - table[-1])
    return INFINITY


def anchors(snc: SeatNumberConfig, k: int, upto: int) -> list[int]:
    """``[s_k(0), ..., s_k(upto)]`` for a closed window."""
    out = snc.slot_sites(k)
    if len(out) > upto + 1:
        return out[: upto + 1]
    return out + list(range(snc.length + 1, snc.length + 1 + upto + 1 - len(out)))


@dataclass(frozen=True)
class SeatZeta:
    """Sparse ``zeta_k(i)`` with the xi and anchor tables that produced it."""

    entries: dict[tuple[int, int], int]
    xi: dict[int, tuple[int, ...]]
    anchors: dict[int, tuple[int, ...]]

    def __call__(self, k: int, i: int) -> int:
        return self.entries.get((k, i), 0)

    def count(self, k: int) -> int:
        return sum(v for (kk, _), v in self.entries.items() if kk == k)


def zeta(snc: SeatNumberConfig) -> SeatZeta:
    """Number of matching points of each level at each effective position."""
    if not snc.closed:
        raise ValueError("zeta needs a window ending with an empty carrier; use the safe window")
    entries: dict[tuple[int, int], int] = {}
    xis = {}
    anc = {}
    for k in range(1, snc.max_level + 1):
        table = snc.xi_table(k)
        xis[k] = tuple(table)
        anc[k] = tuple(anchors(snc, k, table[-1]))
        for t in snc.tau_table(k):
            key = (k, table[t])
            entries[key] = entries.get(key, 0) + 1
    return SeatZeta(dict(sorted(entries.items())), xis, anc)


def zeta_by_anchors(snc: SeatNumberConfig, sigma: Sigma) -> dict[tuple[int, int], int]:
    """``zeta_k(i) = m^sigma_k(s_k(i+1)) - m^sigma_k(s_k(i))`` (nonzero entries)."""
    out = {}
    last = snc.length
    for k in range(1, snc.max_level + 1):
        top = snc.xi_table(k)[-1]
        m = snc.m_table(k, sigma)
        at = [m[min(a, last)] for a in anchors(snc, k, top + 1)]
        for i in range(top + 1):
            if at[i + 1] != at[i]:
                out[(k, i)] = at[i + 1] - at[i]
    return out


def zeta_by_counts(snc: SeatNumberConfig, sigma: Sigma) -> dict[tuple[int, int], int]:
    """``zeta_k(i) = #{x: eta^s_k(x)=1, xi_k(x)=i} - #{x: eta^s_{k+1}(x)=1, xi_k(x)=i+1}``."""
    out: dict[tuple[int, int], int] = {}
    sign = 1 if sigma == "up" else -1
    tables = {k: snc.xi_table(k) for k in range(1, snc.max_level + 1)}
    for x, m in enumerate(snc.marks, start=1):
        if m * sign <= 0:
            continue
        k = abs(m)
        # a seat at level k counts for zeta_k and against zeta_{k-1}
        key = (k, tables[k][x])
        out[key] = out.get(key, 0) + 1
        if k > 1:
            key = (k - 1, tables[k - 1][x] - 1)
            out[key] = out.get(key, 0) - 1
    return {key: v for key, v in sorted(out.items()) if v}
