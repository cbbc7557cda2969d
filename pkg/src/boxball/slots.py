"""Soliton decomposition by run crossing, slot configuration and slot decomposition."""

from __future__ import annotations

import math
import operator
from itertools import accumulate, repeat
from dataclasses import dataclass

from .config import BallConfig
from .kkr import RiggedConfig, kkr_inverse

INFINITY = math.inf


@dataclass(frozen=True)
class Soliton:
    k: int
    sites: tuple[int, ...]

    def __post_init__(self):
        if len(self.sites) != 2 * self.k or list(self.sites) != sorted(set(self.sites)):
            raise ValueError(f"a {self.k}-soliton needs {2 * self.k} increasing sites, got {self.sites}")

    @property
    def leftmost(self) -> int:
        return self.sites[0]

    @property
    def rightmost(self) -> int:
        return self.sites[-1]

    def to_json(self) -> dict:
        return {"k": self.k, "sites": list(self.sites)}


@dataclass(frozen=True)
class SolitonDecomposition:
    solitons: tuple[Soliton, ...]
    records: tuple[int, ...]
    length: int

    def count(self, k: int) -> int:
        return sum(1 for s in self.solitons if s.k == k)


def _window(cfg: BallConfig) -> int:
    return max(len(cfg), cfg.safe_length)


def ts_decompose(cfg: BallConfig) -> SolitonDecomposition:
    """Cross out solitons run by run until no ball is left.

    The zeros before site 1 form a run of unbounded length, so it is never
    selected and never exhausted. The trailing zeros are padded far enough that
    they outlast every ball.
    """
    n = _window(cfg)
    # runs as [letter, sites]; runs[0] is the unbounded run left of site 1
    runs: list[list] = [[0, None]]
    for x, b in enumerate(cfg.window_bits(n), start=1):
        if runs[-1][0] == b and runs[-1][1] is not None:
            runs[-1][1].append(x)
        elif b == 0 and runs[-1][1] is None:
            continue  # leading zeros join the unbounded run
        else:
            runs.append([b, [x]])

    def size(run) -> float:
        return INFINITY if run[1] is None else len(run[1])

    solitons = []
    balls = cfg.ball_count
    i = 1
    while balls:
        # leftmost run at least as long as the one before it
        while size(runs[i]) < size(runs[i - 1]):
            i += 1
        k = len(runs[i - 1][1])
        prev, cur = runs[i - 1][1], runs[i][1]
        sites = prev[-k:] + cur[:k]
        del cur[:k]
        solitons.append(Soliton(k, tuple(sites)))
        balls -= k
        # the preceding run is used up entirely
        if cur:
            # its neighbours carry the same letter and merge
            if runs[i - 2][1] is not None:
                runs[i - 2][1].extend(cur)
            del runs[i - 1 : i + 1]
        else:
            del runs[i - 1 : i + 1]
        i = max(1, i - 2)
    crossed = {x for s in solitons for x in s.sites}
    records = tuple(x for x in range(1, n + 1) if x not in crossed)
    solitons.sort(key=lambda s: s.sites)
    return SolitonDecomposition(tuple(solitons), records, n)


@dataclass(frozen=True)
class SlotConfig:
    """``nu[x-1]`` for sites 1..length; INFINITY at records."""

    nu: tuple
    length: int

    def __call__(self, x: int):
        if 1 <= x <= self.length:
            return self.nu[x - 1]
        if x > self.length:
            return INFINITY
        raise IndexError(x)

    def to_json(self) -> list:
        return [None if v == INFINITY else v for v in self.nu]

    def xi_table(self, k: int) -> list[int]:
        """Number of k-slots in [1, x] for x = 0..length."""
        cache = self.__dict__.setdefault("_xi_cache", {})
        if k not in cache:
            cache[k] = list(accumulate(map(operator.le, repeat(k), self.nu), initial=0))
        return cache[k]


def _nu_from(decomp: SolitonDecomposition) -> SlotConfig:
    nu: list = [INFINITY] * decomp.length
    for s in decomp.solitons:
        for l in range(s.k):
            nu[s.sites[l] - 1] = l
            nu[s.sites[l + s.k] - 1] = l
    return SlotConfig(tuple(nu), decomp.length)


def slot_config(cfg: BallConfig) -> SlotConfig:
    return _nu_from(ts_decompose(cfg))


@dataclass(frozen=True)
class SlotZeta:
    entries: dict[tuple[int, int], int]
    xi: dict[int, tuple[int, ...]]
    anchors: dict[int, tuple[int, ...]]

    def __call__(self, k: int, i: int) -> int:
        return self.entries.get((k, i), 0)

    def count(self, k: int) -> int:
        return sum(v for (kk, _), v in self.entries.items() if kk == k)


def slot_anchors(table: list[int], length: int, upto: int) -> list[int]:
    """Positions of the 0th..upto-th k-slot; past the window every site is a record."""
    out = [0] + [x for x in range(1, len(table)) if table[x] != table[x - 1]]
    if len(out) > upto + 1:
        return out[: upto + 1]
    return out + list(range(length + 1, length + 1 + upto + 1 - len(out)))


def slot_decomposition(cfg: BallConfig) -> SlotZeta:
    """Count the k-solitons appended to each k-slot."""
    return slots_of(ts_decompose(cfg))


def slots_of(decomp: SolitonDecomposition) -> SlotZeta:
    nu = _nu_from(decomp)
    top = max((s.k for s in decomp.solitons), default=0)
    entries: dict[tuple[int, int], int] = {}
    xis, anc = {}, {}
    for k in range(1, top + 1):
        table = nu.xi_table(k)
        xis[k] = tuple(table)
        anc[k] = tuple(slot_anchors(table, nu.length, table[-1] + 1))
    for s in decomp.solitons:
        table, a = xis[s.k], anc[s.k]
        i = table[s.leftmost]
        if not (a[i] <= s.leftmost and s.rightmost <= a[i + 1] - 1):
            raise AssertionError(f"soliton {s} straddles a {s.k}-slot")
        entries[(s.k, i)] = entries.get((s.k, i), 0) + 1
    return SlotZeta(dict(sorted(entries.items())), xis, {k: v[:-1] for k, v in anc.items()})


def slot_zeta_by_levels(nu: SlotConfig, inclusive: bool) -> dict[tuple[int, int], int]:
    """Slot decomposition counted from the level sets of nu alone.

    With ``inclusive`` each k-slot interval ``(s(i), s(i+1)]`` contributes its
    level k-1 sites minus its level k sites. Otherwise level k-1 sites of the
    open interval are counted and the closing slot is subtracted when it sits
    exactly at level k. Either total is twice the count.
    """
    top = max((v for v in nu.nu if v != INFINITY), default=-1) + 1
    xis = {k: nu.xi_table(k) for k in range(1, top + 1)}
    twice: dict[tuple[int, int], int] = {}
    for y, v in enumerate(nu.nu, start=1):
        if v == INFINITY:
            continue
        if inclusive:
            # y lies in (s(i), s(i+1)] for i = xi(y-1)
            key = (v + 1, xis[v + 1][y - 1])
            twice[key] = twice.get(key, 0) + 1
            if v >= 1:
                key = (v, xis[v][y - 1])
                twice[key] = twice.get(key, 0) - 1
        else:
            key = (v + 1, xis[v + 1][y])
            twice[key] = twice.get(key, 0) + 1
            if v >= 1:
                # y is the slot closing interval xi_v(y) - 1
                key = (v, xis[v][y] - 1)
                twice[key] = twice.get(key, 0) - 1
    out = {}
    for key, t in sorted(twice.items()):
        if t % 2:
            raise AssertionError(f"odd level count {t} for {key}")
        if t:
            out[key] = t // 2
    return out


def reconstruct(entries: dict[tuple[int, int], int], confirm: bool = True) -> BallConfig:
    """Invert the slot decomposition through riggings ``J = i - k``."""
    riggings: dict[int, list[int]] = {}
    for (k, i), count in entries.items():
        if k < 1 or i < 0 or count < 0:
            raise ValueError(f"entry ({k}, {i}) -> {count} is outside the slot domain")
        riggings.setdefault(k, []).extend([i - k] * count)
    rc = RiggedConfig.from_riggings({k: v for k, v in riggings.items() if v})
    return kkr_inverse(rc, confirm)
