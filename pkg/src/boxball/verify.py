"""Exact differential checks tying seats, KKR and slots together.

Every check is an integer equality evaluated on one configuration (a
*state* check) or on a configuration and its image under ``T_cap`` (a *step*
check). A check returns ``None`` when it holds and a short description of the
first violation otherwise.
"""

from __future__ import annotations

import itertools
import json
import operator
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import accumulate, repeat
from typing import Callable, Optional, Sequence

from .config import BallConfig, random_config
from .evolution import INF, Capacity, capacity_min, carrier_trace, evolve, format_capacity
from .kkr import KKRBuilder, PairBuilder, RiggedConfig, kkr_forward, kkr_inverse, shift_riggings
from .seats import SeatNumberConfig, seat_numbers, zeta, zeta_by_anchors, zeta_by_counts
from .slots import (
    INFINITY,
    SlotConfig,
    SolitonDecomposition,
    _nu_from,
    reconstruct,
    slots_of,
    slot_zeta_by_levels,
    ts_decompose,
)

DEFAULT_CAPS: tuple[Capacity, ...] = (1, 2, 3, INF)
EXHAUSTIVE_BOUND = 14


class State:
    """One configuration with every derived object computed lazily."""

    def __init__(self, cfg: BallConfig):
        self.cfg = cfg.stripped()

    @cached_property
    def snc(self) -> SeatNumberConfig:
        return seat_numbers(self.cfg)

    @property
    def length(self) -> int:
        return self.snc.length

    @cached_property
    def top(self) -> int:
        """Levels worth checking: one past the highest seat in use."""
        return self.snc.max_level + 1

    def load(self, cap: Capacity) -> list[int]:
        cache = self._loads
        if cap not in cache:
            cache[cap] = carrier_trace(self.cfg, cap, self.length)
        return cache[cap]

    @cached_property
    def _loads(self) -> dict:
        return {}

    @cached_property
    def rc(self) -> RiggedConfig:
        return kkr_forward(self.cfg)

    @cached_property
    def seat_zeta(self) -> dict:
        return zeta(self.snc).entries

    @cached_property
    def decomp(self) -> SolitonDecomposition:
        return ts_decompose(self.cfg)

    @cached_property
    def nu(self) -> SlotConfig:
        return _nu_from(self.decomp)

    @cached_property
    def slot_zeta(self):
        return slots_of(self.decomp)

    @cached_property
    def sequential(self) -> dict[str, Optional[str]]:
        return _sequential_pass(self)


# -- state checks -------------------------------------------------------------


def check_cap_seat(s: State) -> Optional[str]:
    """Loads of the seat carrier restricted to seats <= cap equal the capacity-cap carrier."""
    held = [0] * (s.length + 1)
    for c in range(1, s.top + 1):
        up, down = s.snc.prefix(c, "up"), s.snc.prefix(c, "down")
        held = [h + u - d for h, u, d in zip(held, up, down)]
        if held != s.load(c):
            x = next(x for x in range(s.length + 1) if held[x] != s.load(c)[x])
            return f"x={x}: seats 1..{c} hold {held[x]}, carrier of capacity {c} holds {s.load(c)[x]}"
    # top is past the highest seat, so held now counts every seat
    if held != s.load(INF):
        x = next(x for x in range(s.length + 1) if held[x] != s.load(INF)[x])
        return f"x={x}: seats hold {held[x]}, unbounded carrier holds {s.load(INF)[x]}"
    return None


def check_seat_order(s: State) -> Optional[str]:
    """Seats fill and empty from the bottom; the carrier is empty at records."""
    occupied: set[int] = set()
    for x, m in enumerate(s.snc.marks, start=1):
        if m > 0:
            occupied.add(m)
            if any(l not in occupied for l in range(1, m + 1)):
                return f"x={x}: boarding seat {m} with a lower seat empty"
        elif m < 0:
            occupied.discard(-m)
            if any(l in occupied for l in range(1, -m + 1)):
                return f"x={x}: alighting seat {-m} with a lower seat occupied"
        elif occupied:
            return f"x={x}: record with occupied carrier"
    return None


def check_match(s: State) -> Optional[str]:
    """``min(m_up, m_down)(x)`` counts the matching points up to x."""
    for k in range(1, s.top + 1):
        up = s.snc.m_table(k, "up")
        down = s.snc.m_table(k, "down")
        taus = s.snc.tau_table(k)
        hit = [0] * (s.length + 1)
        for t in taus:
            hit[t] = 1
        both = list(map(min, up, down))
        passed = list(accumulate(hit))
        if both != passed:
            x = next(x for x in range(s.length + 1) if both[x] != passed[x])
            return f"k={k} x={x}: min(m)={both[x]} but {passed[x]} matching points"
        if up[-1] != down[-1] or up[-1] != len(taus):
            return f"k={k}: final m {up[-1]}/{down[-1]} vs {len(taus)} matching points"
    return None


def check_m_agree_at_slots(s: State) -> Optional[str]:
    """At k-slot anchors both m agree and are nondecreasing."""
    for k in range(1, s.top + 1):
        table = s.snc.xi_table(k)
        up = s.snc.m_table(k, "up")
        down = s.snc.m_table(k, "down")
        anc = [0] + [x for x in range(1, s.length + 1) if table[x] != table[x - 1]]
        at_up = [up[a] for a in anc]
        at_down = [down[a] for a in anc]
        if at_up != at_down:
            i = next(i for i in range(len(anc)) if at_up[i] != at_down[i])
            return f"k={k} anchor x={anc[i]}: m_up={at_up[i]} m_down={at_down[i]}"
        if any(a > b for a, b in zip(at_up, at_up[1:])):
            return f"k={k}: m decreases along anchors {at_up}"
    return None


def check_zeta_forms(s: State) -> Optional[str]:
    z = s.seat_zeta
    for sigma in ("up", "down"):
        a = zeta_by_anchors(s.snc, sigma)
        if a != z:
            return f"anchor form ({sigma}) {a} != {z}"
        c = zeta_by_counts(s.snc, sigma)
        if c != z:
            return f"count form ({sigma}) {c} != {z}"
    return None


def check_soliton_count(s: State) -> Optional[str]:
    for k in range(1, s.top + 1):
        expect = len(s.snc.up.get(k, ())) - len(s.snc.up.get(k + 1, ()))
        if s.decomp.count(k) != expect:
            return f"k={k}: {s.decomp.count(k)} solitons, seats give {expect}"
    return None


def check_local_energy(s: State) -> Optional[str]:
    """Boardings at seats <= k equal ``min(eta, k - W_k(x-1))``."""
    bits = s.snc.config.bits
    marks = s.snc.marks
    for k in range(1, s.top + 1):
        w = s.load(k)
        lhs = [0 < m <= k for m in marks]
        rhs = list(map(min, bits, map(operator.sub, repeat(k), w)))
        if lhs != rhs:
            x = next(x for x in range(len(lhs)) if lhs[x] != rhs[x]) + 1
            return f"k={k} x={x}: boarding {int(lhs[x - 1])} vs min(eta, k - W_k) = {rhs[x - 1]}"
    return None


def check_seat_slot(s: State) -> Optional[str]:
    for x, m in enumerate(s.snc.marks, start=1):
        v = s.nu(x)
        if (m == 0) != (v == INFINITY) or (m and v != abs(m) - 1):
            return f"x={x}: seat mark {m} but nu={v}"
    sz = s.slot_zeta
    for k in range(1, s.snc.max_level + 1):
        if tuple(s.snc.xi_table(k)) != sz.xi.get(k, ()):
            return f"k={k}: xi tables differ"
    if sz.entries != s.seat_zeta:
        return f"slot {sz.entries} != seat {s.seat_zeta}"
    return None


def check_slot_zeta_forms(s: State) -> Optional[str]:
    for inclusive in (True, False):
        got = slot_zeta_by_levels(s.nu, inclusive)
        if got != s.slot_zeta.entries:
            return f"level-set form (inclusive={inclusive}) {got} != {s.slot_zeta.entries}"
    return None


def check_thm2(s: State) -> Optional[str]:
    from_rc: dict[tuple[int, int], int] = {}
    for k, vals in s.rc.riggings.items():
        for v in vals:
            from_rc[(k, v + k)] = from_rc.get((k, v + k), 0) + 1
    if dict(sorted(from_rc.items())) != s.slot_zeta.entries:
        return f"riggings give {from_rc}, slots give {s.slot_zeta.entries}"
    return None


def check_tau_soliton(s: State) -> Optional[str]:
    for k in range(1, s.top + 1):
        right = sorted(sol.rightmost for sol in s.decomp.solitons if sol.k == k)
        if right != s.snc.tau_table(k):
            return f"k={k}: soliton ends {right} vs matching points {s.snc.tau_table(k)}"
    return None


def check_char_slot(s: State) -> Optional[str]:
    """nu read off the carriers of every capacity."""
    loads = {c: s.load(c) for c in range(1, s.top + 1)}
    inf_load = s.load(INF)
    for x in range(1, s.length + 1):
        if s.cfg[x]:
            # smallest capacity with room left
            lvl = next((c for c in range(1, s.top + 1) if c - loads[c][x - 1] >= 1), None)
            want = lvl - 1 if lvl is not None else None
        elif inf_load[x - 1] == 0:
            want = INFINITY
        else:
            lvl = next((c for c in range(1, s.top + 1) if loads[c][x - 1] >= 1), None)
            want = lvl - 1 if lvl is not None else None
        if want is None or s.nu(x) != want:
            return f"x={x}: carrier predicts nu={want}, got {s.nu(x)}"
    return None


def check_roundtrip_kkr(s: State) -> Optional[str]:
    back = kkr_inverse(s.rc, confirm=False)
    return None if back.same_balls(s.cfg) else f"inverse gave {back}"


def check_roundtrip_slots(s: State) -> Optional[str]:
    back = reconstruct(s.slot_zeta.entries, confirm=False)
    return None if back.same_balls(s.cfg) else f"reconstruct gave {back}"


def _sequential_pass(s: State) -> dict[str, Optional[str]]:
    """Run KKR and the interlacing pair side by side with the seat marks.

    Each step is compared at the levels it touches, which by induction
    compares the whole objects at every site.
    """
    fails: dict[str, Optional[str]] = {"alt": None, "alt2": None, "alt3": None, "seat_KKR": None}

    def fail(name, msg):
        if fails[name] is None:
            fails[name] = msg

    kb, pb = KKRBuilder(), PairBuilder()
    marks = s.snc.marks
    xi_tables = [None] + [s.snc.xi_table(k) for k in range(1, s.top + 1)]
    boarded = {"up": [0] * (s.top + 2), "down": [0] * (s.top + 2)}
    last_at: dict[tuple[str, int], list[int]] = {}
    max_target = {"up": -1, "down": -1}
    occupied = 0  # bitmask of occupied seats
    # past the last mark nothing changes and max_target < x only gets easier,
    # so the first record site after it stands for the rest
    last_mark = max((x for x, m in enumerate(marks, start=1) if m), default=0)
    for x, bit in enumerate(s.snc.config.bits[: last_mark + 1], start=1):
        m = marks[x - 1]
        kres = kb.step(bit)
        pres = pb.step(bit)
        if m:
            occupied ^= 1 << abs(m)
        # alt: the box lands where the seat mark says
        if pres is None:
            if m:
                fail("alt", f"x={x}: pair added nothing, seat mark is {m}")
                continue
        elif pres[1] != abs(m) or (pres[0] == "up") != (m > 0):
            fail("alt", f"x={x}: pair added {pres[:2]}, seat mark is {m}")
            continue
        if pres is not None:
            sigma, k, value = pres
            rigs = pb.rows[sigma].rigs
            if pb.diff(k) not in (0, 1):
                fail("alt", f"x={x}: lambda_up - lambda_down = {pb.diff(k)} at level {k}")
            counts = boarded[sigma]
            counts[k] += 1
            p_seat = x - 2 * sum(counts[1 : k + 1])
            lst = last_at.setdefault((sigma, k), [])
            del lst[len(rigs.get(k, ())) - 1 :]
            lst.append(p_seat)
            if lst != rigs[k]:
                fail("alt2", f"x={x} {sigma} k={k}: J={rigs[k]} vs p(t)={lst}")
            if k > 1:
                below = last_at.setdefault((sigma, k - 1), [])
                del below[len(rigs.get(k - 1, ())) :]
                if below != rigs.get(k - 1, []):
                    fail("alt2", f"x={x} {sigma} k={k - 1}: J={rigs.get(k - 1)} vs p(t)={below}")
            xi = xi_tables[k][x]
            expect = xi - k if sigma == "up" else xi
            if p_seat != expect:
                fail("alt3", f"x={x} {sigma} k={k}: vacancy {p_seat} vs xi-based {expect}")
            # row l is singular at site y exactly when y = max J_l + 2 E_l
            max_target[sigma], longest_here = pb.rows[sigma].reach(x)
        # alt3: the longest singular row is the run of occupied (or empty) low seats
        for sigma in ("up", "down"):
            if sigma == "down" and not occupied:
                continue
            if pres is not None and pres[0] == sigma:
                longest = longest_here
            else:
                longest = 0 if max_target[sigma] < x else None
            expect = 0
            if sigma == "up":
                while occupied >> (expect + 1) & 1:
                    expect += 1
            else:
                while not occupied >> (expect + 1) & 1:
                    expect += 1
            if longest != expect:
                fail("alt3", f"x={x} {sigma}: longest singular row {longest}, seats give {expect}")
        # seat_KKR: the plain KKR step mirrors the up side of the pair
        kk = None if m <= 0 else (m, pres[2])
        if kres != kk:
            fail("seat_KKR", f"x={x}: KKR step {kres} vs up-side step {kk}")
    for _ in range(s.length - last_mark - 1):
        kb.step(0)
        pb.step(0)
    # the plain builder has just computed rc; keep it
    s.__dict__.setdefault("rc", kb.result())
    if s.rc != pb.result().up:
        fail("seat_KKR", f"KKR {s.rc} vs up side {pb.result().up}")
    return fails


def _seq(name: str) -> Callable[[State], Optional[str]]:
    def run(s: State) -> Optional[str]:
        return s.sequential[name]

    run.__name__ = f"check_{name}"
    return run


STATE_CHECKS: dict[str, Callable[[State], Optional[str]]] = {
    "cap_seat": check_cap_seat,
    "seat_order": check_seat_order,
    "match": check_match,
    "m_agree_at_slots": check_m_agree_at_slots,
    "zeta_forms": check_zeta_forms,
    "soliton_count": check_soliton_count,
    "local_energy": check_local_energy,
    "alt": _seq("alt"),
    "alt2": _seq("alt2"),
    "alt3": _seq("alt3"),
    "seat_KKR": _seq("seat_KKR"),
    "seat_slot": check_seat_slot,
    "slot_zeta_forms": check_slot_zeta_forms,
    "thm2": check_thm2,
    "tau_soliton": check_tau_soliton,
    "char_slot": check_char_slot,
    "roundtrip_kkr": check_roundtrip_kkr,
    "roundtrip_slots": check_roundtrip_slots,
}


# -- step checks ----------------------------------------------------------------


def _shifted(entries: dict, cap: Capacity) -> dict:
    return {(k, i + capacity_min(k, cap)): v for (k, i), v in entries.items()}


def check_seat_ism(a: State, b: State, cap: Capacity) -> Optional[str]:
    want = dict(sorted(_shifted(a.seat_zeta, cap).items()))
    return None if b.seat_zeta == want else f"zeta after step {b.seat_zeta}, shift gives {want}"


def check_slot_finite(a: State, b: State, cap: Capacity) -> Optional[str]:
    want = dict(sorted(_shifted(a.slot_zeta.entries, cap).items()))
    got = b.slot_zeta.entries
    return None if got == want else f"slot zeta after step {got}, shift gives {want}"


def check_kosty(a: State, b: State, cap: Capacity) -> Optional[str]:
    want = shift_riggings(a.rc, cap)
    return None if b.rc == want else f"riggings after step {b.rc}, shift gives {want}"


def check_conservation(a: State, b: State, cap: Capacity) -> Optional[str]:
    for k in range(1, max(a.top, b.top) + 1):
        ups = len(a.snc.up.get(k, ()))
        downs = len(a.snc.down.get(k, ()))
        after = len(b.snc.up.get(k, ()))
        if not ups == downs == after:
            return f"k={k}: up {ups}, down {downs}, up after step {after}"
    return None


def check_seat_flip(a: State, b: State, cap: Capacity) -> Optional[str]:
    """Alighting at seat k becomes boarding at seat k one step later."""
    if cap is not INF:
        return None
    n = max(a.length, b.length)
    for x in range(1, n + 1):
        before, after = a.snc.mark(x), b.snc.mark(x)
        if (before < 0) != (after > 0) or (before < 0 and after != -before):
            return f"x={x}: mark {before} then {after}"
        if before > 0 and not (after == 0 or after <= -before):
            return f"x={x}: boarding seat {before} then mark {after}"
    return None


def _xi_upto(snc, k: int, n: int) -> list[int]:
    table = snc.xi_table(k)
    return table + list(range(table[-1] + 1, table[-1] + 1 + n - snc.length))


def check_xi_shift(a: State, b: State, cap: Capacity) -> Optional[str]:
    """``T xi_k - xi_k = W_k + T W_k`` and it equals k at alighting seats >= k."""
    if cap is not INF:
        return None
    n = max(a.length, b.length)
    for k in range(1, max(a.top, b.top) + 1):
        wa, wb = carrier_trace(a.cfg, k, n), carrier_trace(b.cfg, k, n)
        xa, xb = _xi_upto(a.snc, k, n), _xi_upto(b.snc, k, n)
        moved = [q - p for p, q in zip(xa, xb)]
        if moved != [p + q for p, q in zip(wa, wb)]:
            x = next(x for x in range(n + 1) if moved[x] != wa[x] + wb[x])
            return f"k={k} x={x}: xi moved by {moved[x]}, loads give {wa[x] + wb[x]}"
        for x, m in enumerate(a.snc.marks, start=1):
            if m <= -k and moved[x] != k:
                return f"k={k} x={x}: xi moved by {moved[x]} at an alighting seat"
    return None


STEP_CHECKS: dict[str, Callable[[State, State, Capacity], Optional[str]]] = {
    "seat_flip": check_seat_flip,
    "xi_shift": check_xi_shift,
    "seat_ISM": check_seat_ism,
    "kosty": check_kosty,
    "slot_finite": check_slot_finite,
    "conservation": check_conservation,
}

CHECK_NAMES: tuple[str, ...] = tuple(sorted(list(STATE_CHECKS) + list(STEP_CHECKS)))


# -- reports ----------------------------------------------------------------------


@dataclass
class Counterexample:
    config: str
    cap: str
    step: int
    detail: str

    def replay(self) -> BallConfig:
        """The failing state: ``config`` evolved ``step`` times under ``cap``."""
        from .config import parse
        from .evolution import evolve_n, parse_capacity

        return evolve_n(parse(self.config), parse_capacity(self.cap), self.step)[-1]


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: Optional[Counterexample] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class CheckReport:
    results: dict[str, CheckResult] = field(default_factory=dict)
    configs: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results.values() if not r.ok]

    def merge(self, other: "CheckReport") -> None:
        self.configs += other.configs
        for name, r in other.results.items():
            mine = self.results.setdefault(name, CheckResult(name))
            mine.passed += r.passed
            mine.failed += r.failed
            if mine.counterexample is None:
                mine.counterexample = r.counterexample

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "ok": self.ok,
            "configs": self.configs,
            "checks": [
                {
                    "name": r.name,
                    "status": "pass" if r.ok else "fail",
                    "passed": r.passed,
                    "failed": r.failed,
                    "counterexample": None
                    if r.counterexample is None
                    else {
                        "config": r.counterexample.config,
                        "capacity": r.counterexample.cap,
                        "step": r.counterexample.step,
                        "detail": r.counterexample.detail,
                    },
                }
                for r in sorted(self.results.values(), key=lambda r: r.name)
            ],
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)

    def summary_lines(self) -> list[str]:
        lines = []
        for r in sorted(self.results.values(), key=lambda r: r.name):
            status = "PASS" if r.ok else "FAIL"
            line = f"{status} {r.name:<16} {r.passed} passed, {r.failed} failed"
            if r.counterexample:
                c = r.counterexample
                line += f"  [config={c.config or '(empty)'} cap={c.cap} step={c.step}: {c.detail}]"
            lines.append(line)
        return lines


def _guarded(check: Callable, *args) -> Optional[str]:
    """A check that raises has failed; the exception becomes its detail."""
    try:
        return check(*args)
    except Exception as exc:  # noqa: BLE001
        return f"raised {type(exc).__name__}: {exc}"


class _Cache:
    """Recently analysed states and their state-check outcomes.

    Everything is keyed by the stripped configuration, which determines every
    check outcome.
    """

    def __init__(self, limit: int = 200_000, live: int = 512):
        self.limit = limit
        self.live = live
        self.states: dict[str, dict[str, Optional[str]]] = {}
        self.recent: OrderedDict[str, State] = OrderedDict()
        self.reports: dict[tuple, CheckReport] = {}

    def state(self, cfg: BallConfig) -> State:
        key = str(cfg.stripped())
        st = self.recent.get(key)
        if st is None:
            st = State(cfg)
            self.recent[key] = st
            if len(self.recent) > self.live:
                self.recent.popitem(last=False)
        else:
            self.recent.move_to_end(key)
        return st

    def state_outcomes(self, state: State, names: Sequence[str]) -> dict[str, Optional[str]]:
        key = str(state.cfg)
        hit = self.states.get(key)
        if hit is None:
            hit = {name: _guarded(STATE_CHECKS[name], state) for name in names}
            if len(self.states) < self.limit:
                self.states[key] = hit
        return hit


def _fails_on(cfg: BallConfig, cap: Capacity, step: int, name: str) -> Optional[str]:
    """Re-run one check from scratch on ``T_cap^step cfg``."""
    cur = cfg
    for _ in range(step):
        cur = evolve(cur, cap)
    a = State(cur)
    if name in STATE_CHECKS:
        return _guarded(STATE_CHECKS[name], a)
    return _guarded(STEP_CHECKS[name], a, State(evolve(cur, cap)), cap)


def shrink(cfg: BallConfig, cap: Capacity, step: int, name: str) -> tuple[BallConfig, str]:
    """Greedily drop trailing then leading sites while the check keeps failing."""
    detail = _fails_on(cfg, cap, step, name)
    if detail is None:
        raise ValueError("configuration does not fail this check")
    changed = True
    while changed:
        changed = False
        for cut in (lambda b: b[:-1], lambda b: b[1:]):
            while len(cfg.bits) > 0:
                cand = BallConfig(cut(cfg.bits))
                d = _fails_on(cand, cap, step, name)
                if d is None:
                    break
                cfg, detail, changed = cand, d, True
    return cfg, detail


def check_all(
    cfg: BallConfig,
    caps: Sequence[Capacity] = DEFAULT_CAPS,
    steps: int = 3,
    names: Optional[Sequence[str]] = None,
    _cache: Optional[_Cache] = None,
) -> CheckReport:
    """Every check on ``cfg`` and its first ``steps`` images under each capacity.

    State checks run on ``T^t cfg`` for t = 0..steps, step checks on each pair
    ``(T^t cfg, T^(t+1) cfg)`` for t = 0..steps-1.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    names = list(CHECK_NAMES if names is None else names)
    unknown = [n for n in names if n not in STATE_CHECKS and n not in STEP_CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    cache = _cache or _Cache()
    state_names = [n for n in names if n in STATE_CHECKS]
    step_names = [n for n in names if n in STEP_CHECKS]
    report = CheckReport({n: CheckResult(n) for n in names}, configs=1)

    def record(name, outcome, cap, t):
        r = report.results[name]
        if outcome is None:
            r.passed += 1
            return
        r.failed += 1
        if r.counterexample is None:
            small, detail = shrink(cfg, cap, t, name)
            r.counterexample = Counterexample(str(small), format_capacity(cap), t, detail)

    for cap in caps:
        states = [cache.state(cfg)]
        for _ in range(steps):
            states.append(cache.state(evolve(states[-1].cfg, cap)))
        for t, st in enumerate(states):
            outcomes = cache.state_outcomes(st, state_names)
            for name in state_names:
                record(name, outcomes[name], cap, t)
        for t in range(steps):
            for name in step_names:
                record(name, _guarded(STEP_CHECKS[name], states[t], states[t + 1], cap), cap, t)
    return report


def _run_batch(args) -> CheckReport:
    configs, caps, steps = args
    cache = _Cache()
    out = CheckReport()
    for bits in configs:
        cfg = BallConfig(bits)
        # trailing zeros never change an outcome
        key = str(cfg.stripped())
        rep = cache.reports.get(key)
        if rep is None:
            rep = check_all(cfg, caps, steps, _cache=cache)
            if len(cache.reports) < cache.limit:
                cache.reports[key] = rep
        out.merge(rep)
    return out


def _run(configs: list[tuple[int, ...]], caps, steps, workers: int) -> CheckReport:
    start = time.perf_counter()
    report = CheckReport({n: CheckResult(n) for n in CHECK_NAMES})
    if workers > 1 and len(configs) > 1:
        size = max(1, len(configs) // (workers * 4))
        chunks = [configs[i : i + size] for i in range(0, len(configs), size)]
        with ProcessPoolExecutor(workers) as pool:
            # map preserves chunk order, so the first counterexample is stable
            for part in pool.map(_run_batch, [(c, tuple(caps), steps) for c in chunks]):
                report.merge(part)
    elif configs:
        report.merge(_run_batch((configs, tuple(caps), steps)))
    report.seconds = time.perf_counter() - start
    return report


def all_configs(max_len: int) -> list[tuple[int, ...]]:
    """Every 0/1 string of length 1..max_len."""
    return [bits for n in range(1, max_len + 1) for bits in itertools.product((0, 1), repeat=n)]


def exhaustive(
    max_len: int,
    caps: Sequence[Capacity] = DEFAULT_CAPS,
    steps: int = 3,
    workers: int = 1,
) -> CheckReport:
    if not 1 <= max_len <= EXHAUSTIVE_BOUND:
        raise ValueError(f"max_len must lie in 1..{EXHAUSTIVE_BOUND}, got {max_len}")
    return _run(all_configs(max_len), caps, steps, workers)


def fuzz(
    count: int,
    length: int,
    density: float,
    seed: int,
    caps: Sequence[Capacity] = DEFAULT_CAPS,
    steps: int = 3,
    workers: int = 1,
) -> CheckReport:
    """``count`` random configurations; configuration n uses seed ``seed + n``."""
    if count < 0:
        raise ValueError("count must be non-negative")
    configs = [random_config(length, density, seed + n).bits for n in range(count)]
    return _run(configs, caps, steps, workers)
