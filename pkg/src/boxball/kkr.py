"""Rigged configurations and the sequential KKR bijection.

A rigged configuration is a partition ``mu`` together with, for every row
length ``k``, a sorted list of integers ``J_k`` (one per row of that length).
Riggings are stored ascending, so ``J_k[-1]`` is the largest entry.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Literal, Union

from .config import BallConfig
from .evolution import Capacity, capacity_min, check_capacity

Sigma = Literal["up", "down"]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive row lengths."""

    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 1 for r in rows):
            raise ValueError("partition rows must be positive")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"partition rows must be weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_conjugate(cls, lam: Iterable[int]) -> "Partition":
        lam = list(lam)
        rows = []
        for k in range(len(lam), 0, -1):
            nxt = lam[k] if k < len(lam) else 0
            rows.extend([k] * (lam[k - 1] - nxt))
        return cls(tuple(rows))

    def __len__(self) -> int:
        return len(self.rows)

    def __bool__(self) -> bool:
        return bool(self.rows)

    @property
    def size(self) -> int:
        return sum(self.rows)

    def conjugate(self) -> tuple[int, ...]:
        """``lambda_k = #{i : mu_i >= k}`` for k = 1..mu_1."""
        top = self.rows[0] if self.rows else 0
        return tuple(sum(1 for r in self.rows if r >= k) for k in range(1, top + 1))

    def multiplicity(self, k: int) -> int:
        return self.rows.count(k)

    def energy(self, k: int) -> int:
        """``E_k = sum_i min(mu_i, k)``."""
        return sum(min(r, k) for r in self.rows)


@dataclass(frozen=True, eq=False)
class RiggedConfig:
    partition: Partition
    riggings: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        rigs = {int(k): tuple(sorted(int(v) for v in vals)) for k, vals in self.riggings.items() if vals}
        for k in set(self.partition.rows) | set(rigs):
            vals = rigs.get(k, ())
            if len(vals) != self.partition.multiplicity(k):
                raise ValueError(
                    f"length {k}: {len(vals)} riggings for {self.partition.multiplicity(k)} rows"
                )
            if vals and vals[0] < -k:
                raise ValueError(f"rigging {vals[0]} below -{k} for rows of length {k}")
        object.__setattr__(self, "riggings", dict(sorted(rigs.items())))

    @classmethod
    def empty(cls) -> "RiggedConfig":
        return cls(Partition(), {})

    @classmethod
    def from_riggings(cls, riggings: dict[int, Iterable[int]]) -> "RiggedConfig":
        """Build from ``{k: [J_k...]}``; the partition is implied by the counts."""
        rows = []
        for k, vals in riggings.items():
            rows.extend([int(k)] * len(list(vals)))
        return cls(Partition(tuple(sorted(rows, reverse=True))), {k: tuple(v) for k, v in riggings.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RiggedConfig):
            return NotImplemented
        return self.partition == other.partition and self.riggings == other.riggings

    def __hash__(self) -> int:
        return hash((self.partition, tuple(self.riggings.items())))

    def __repr__(self) -> str:
        return f"RiggedConfig(mu={self.partition.rows}, J={self.riggings})"

    def rigging(self, k: int) -> tuple[int, ...]:
        return self.riggings.get(k, ())

    def vacancy(self, k: int, x: int) -> int:
        return x - 2 * self.partition.energy(k)

    def display_order(self) -> list[tuple[int, int]]:
        """``(row length, rigging)`` top to bottom, largest rigging on top within a length."""
        out = []
        for k in sorted(self.riggings, reverse=True):
            out.extend((k, v) for v in reversed(self.riggings[k]))
        return out

    def to_json(self) -> dict:
        return {
            "mu": list(self.partition.rows),
            "riggings": {str(k): list(v) for k, v in self.riggings.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "RiggedConfig":
        rc = cls.from_riggings({int(k): v for k, v in data.get("riggings", {}).items()})
        if "mu" in data and tuple(data["mu"]) != rc.partition.rows:
            raise ValueError(f"mu {data['mu']} does not match riggings {data['riggings']}")
        return rc


class _Rows:
    """Mutable rigged configuration used while scanning sites."""

    __slots__ = ("rigs", "count")

    def __init__(self, rigs: dict[int, list[int]] | None = None):
        self.rigs: dict[int, list[int]] = rigs or {}
        self.count = sum(map(len, self.rigs.values()))

    def energy(self, k: int) -> int:
        total = 0
        for length, v in self.rigs.items():
            total += (length if length < k else k) * len(v)
        return total

    def vacancy(self, k: int, x: int) -> int:
        return x - 2 * self.energy(k)

    def energies(self) -> dict[int, int]:
        """``E_k`` for every row length k present, in one pass."""
        out = {}
        below = 0  # boxes in rows shorter than k
        rows_at_least = self.count
        for k in sorted(self.rigs):
            out[k] = below + k * rows_at_least
            below += k * len(self.rigs[k])
            rows_at_least -= len(self.rigs[k])
        return out

    def reach(self, x: int) -> tuple[int, int]:
        """Largest ``max J_k + 2 E_k`` over rows, and the longest row singular at x."""
        top, longest = -1, 0
        below = 0
        rows_at_least = self.count
        for k in sorted(self.rigs):
            v = self.rigs[k]
            t = v[-1] + 2 * (below + k * rows_at_least)
            if t > top:
                top = t
            if t == x:
                longest = k
            below += k * len(v)
            rows_at_least -= len(v)
        return top, longest

    def pop_largest(self, k: int) -> int:
        v = self.rigs[k]
        out = v.pop()
        if not v:
            del self.rigs[k]
        self.count -= 1
        return out

    def insert(self, k: int, value: int) -> None:
        bisect.insort(self.rigs.setdefault(k, []), value)
        self.count += 1

    def freeze(self) -> RiggedConfig:
        return RiggedConfig.from_riggings({k: tuple(v) for k, v in self.rigs.items()})


class KKRBuilder:
    """Sequential KKR insertion, one site at a time."""

    def __init__(self):
        self.x = 0
        self.state = _Rows()

    def step(self, ball: int) -> tuple[int, int] | None:
        """Advance one site; returns ``(new row length, its rigging)`` or None at a vacant site."""
        self.x += 1
        if not ball:
            return None
        st = self.state
        k = st.reach(self.x - 1)[1]
        if k:
            st.pop_largest(k)
        # vacancy of the grown row, counting the row itself
        p = self.x - 2 * (st.energy(k + 1) + k + 1)
        st.insert(k + 1, p)
        return k + 1, p

    def result(self) -> RiggedConfig:
        return self.state.freeze()


def kkr_forward(cfg: BallConfig, upto: int | None = None) -> RiggedConfig:
    """``(mu(upto), J(upto))``; the default runs through the last ball."""
    if upto is None:
        upto = cfg.last_ball
    b = KKRBuilder()
    for bit in cfg.window_bits(upto):
        b.step(bit)
    return b.result()


def kkr_inverse(rc: RiggedConfig, confirm: bool = True) -> BallConfig:
    """Undo the insertions from right to left.

    At a ball site the inserted row is singular, and no row is singular at a
    vacant site. Of the singular rows, the shortest is the one that was just
    grown. Row k is singular at y exactly when ``y = max J_k + 2 E_k``, so the
    scan jumps from ball to ball. With ``confirm`` the result is run forward
    again, which rejects riggings outside the image.
    """
    out = _undo_insertions(rc)
    if confirm and kkr_forward(out) != rc:
        raise ValueError(f"{rc!r} is not the rigged configuration of any finite configuration")
    return out


@lru_cache(maxsize=4096)
def _undo_insertions(rc: RiggedConfig) -> BallConfig:
    st = _Rows({k: list(v) for k, v in rc.riggings.items()})
    bits: list[int] = []
    x = math.inf
    while st.rigs:
        # rows are fixed until the next ball, so the next ball sits at the
        # largest site y <= x with y = max J_k + 2 E_k for some k
        energies = st.energies()
        hits = [(v[-1] + 2 * energies[k], -k) for k, v in st.rigs.items()]
        y = max((t for t, _ in hits if t <= x), default=0)
        if y < 1:
            break
        if not bits:
            bits = [0] * y
        bits[y - 1] = 1
        grown = min(-n for t, n in hits if t == y)
        st.pop_largest(grown)
        if grown > 1:
            k = grown - 1
            st.insert(k, y - 1 - 2 * (st.energy(k) + k))
        x = y - 1
    if st.rigs:
        raise ValueError(f"{rc!r} is not the rigged configuration of any finite configuration")
    return BallConfig(tuple(bits)).stripped()


def energy_vacancy(cfg: BallConfig, k: int, x: int) -> tuple[int, int]:
    """``(E_k(x), p_k(x))`` from the boarding counts of the seat carrier."""
    from .seats import seat_marks

    if k < 1:
        raise ValueError("k must be positive")
    marks = seat_marks(cfg, x)
    e = sum(1 for m in marks if 0 < m <= k)
    return e, x - 2 * e


def shift_riggings(rc: RiggedConfig, cap: Capacity) -> RiggedConfig:
    """Add ``min(k, cap)`` to every rigging of length-k rows."""
    check_capacity(cap)
    return RiggedConfig(
        rc.partition,
        {k: tuple(v + capacity_min(k, cap) for v in vals) for k, vals in rc.riggings.items()},
    )


# -- interlacing pair -------------------------------------------------------


@dataclass(frozen=True)
class InterlacingPair:
    up: RiggedConfig
    down: RiggedConfig

    @property
    def up_partition(self) -> Partition:
        return self.up.partition

    @property
    def down_partition(self) -> Partition:
        return self.down.partition

    def side(self, sigma: Sigma) -> RiggedConfig:
        return self.up if sigma == "up" else self.down


class PairBuilder:
    """Grows ``(mu_up, mu_down)`` and their refined riggings site by site."""

    def __init__(self):
        self.x = 0
        self.lam = {"up": [], "down": []}
        self.rows = {"up": _Rows(), "down": _Rows()}

    # lam["down"] is zero-padded to the length of lam["up"]

    def diff(self, k: int) -> int:
        up, down = self.lam["up"], self.lam["down"]
        return up[k - 1] - down[k - 1] if k <= len(up) else 0

    def k_up(self) -> int:
        up, down = self.lam["up"], self.lam["down"]
        k, top = 0, len(up)
        while k < top and up[k] - down[k] == 1:
            k += 1
        return k

    def k_down(self) -> int | float:
        up, down = self.lam["up"], self.lam["down"]
        k, top = 0, len(up)
        while k < top and up[k] == down[k]:
            k += 1
        return math.inf if k == top else k

    def step(self, ball: int) -> tuple[str, int, int] | None:
        """Advance one site; returns ``(sigma, level, rigging)`` of the added box or None."""
        self.x += 1
        if ball:
            sigma, k = "up", self.k_up()
            if k == len(self.lam["up"]):
                self.lam["up"].append(0)
                self.lam["down"].append(0)
        else:
            kd = self.k_down()
            if kd == math.inf:
                return None
            sigma, k = "down", int(kd)
        self.lam[sigma][k] += 1
        st = self.rows[sigma]
        if k:
            st.pop_largest(k)
        p = self.x - 2 * (st.energy(k + 1) + k + 1)
        st.insert(k + 1, p)
        return sigma, k + 1, p

    def vacancy(self, sigma: Sigma, k: int) -> int:
        return self.rows[sigma].vacancy(k, self.x)

    def result(self) -> InterlacingPair:
        return InterlacingPair(self.rows["up"].freeze(), self.rows["down"].freeze())


def interlacing_sequence(cfg: BallConfig, upto: int | None = None) -> InterlacingPair:
    if upto is None:
        upto = len(cfg)
    b = PairBuilder()
    for bit in cfg.window_bits(upto):
        b.step(bit)
    return b.result()


def singular_rows(obj: Union[RiggedConfig, InterlacingPair], sigma: Sigma, x: int) -> set[int]:
    """Row lengths k with ``p_k(x)`` equal to the largest rigging of length k."""
    rc = obj.side(sigma) if isinstance(obj, InterlacingPair) else obj
    return {k for k, v in rc.riggings.items() if v and v[-1] == rc.vacancy(k, x)}
