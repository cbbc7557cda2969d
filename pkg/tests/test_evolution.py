import itertools

import pytest
from hypothesis import given

import oracles
from boxball.config import BallConfig, parse
from boxball.evolution import INF, carrier_trace, evolve, evolve_n, parse_capacity
from conftest import ETA_B, capacities, configs

# [PAPER] rows of the time evolution figure, sites 1..22
PRINTED_ROWS = [
    "1110000100100000000000",
    "0001110010010000000000",
    "0000001101101000000000",
    "0000000010010111000000",
    "0000000001001000111000",
]


def test_printed_evolution_rows():
    states = evolve_n(ETA_B, INF, 4)
    assert ["".join(str(s[x]) for x in range(1, 23)) for s in states] == PRINTED_ROWS


def test_eta_a_carrier_loads():
    # [PAPER] W_4 row of the seat figure
    loads = carrier_trace(parse("110011101100011000"), 4, 19)
    assert loads == [0, 1, 2, 1, 0, 1, 2, 3, 2, 3, 4, 3, 2, 1, 2, 3, 2, 1, 0, 0]


def _cap_or_none(cap):
    return None if cap is INF else cap


@given(configs(30), capacities())
def test_loads_match_min_recursion(cfg, cap):
    w = carrier_trace(cfg, cap, len(cfg))
    assert w == oracles.capacity_loads(list(cfg.bits), _cap_or_none(cap))


@given(configs(30))
def test_unbounded_step_moves_each_ball_once(cfg):
    got = evolve(cfg, INF)
    assert got.same_balls(BallConfig(tuple(oracles.move_balls(list(cfg.bits)))))


@given(configs(30), capacities())
def test_step_matches_load_oracle(cfg, cap):
    got = evolve(cfg, cap)
    assert got.same_balls(BallConfig(tuple(oracles.step_by_loads(list(cfg.bits), _cap_or_none(cap)))))


@given(configs(30), capacities())
def test_ball_count_conserved_and_window_grows(cfg, cap):
    out = evolve(cfg, cap)
    assert out.ball_count == cfg.ball_count
    assert len(out) == len(cfg) + cfg.ball_count


@given(configs(30), capacities())
def test_trace_invariants(cfg, cap):
    w = carrier_trace(cfg, cap, len(cfg) + 3)
    assert w[0] == 0
    assert all(abs(a - b) <= 1 for a, b in zip(w, w[1:]))
    if cap is not INF:
        assert all(0 <= v <= cap for v in w)


def test_capacity_one_hand_trace():
    # full after site 1, so the ball at site 2 stays; the carried ball lands at 3
    assert evolve(parse("110"), 1).same_balls(parse("011"))
    assert evolve(parse("110"), INF).same_balls(parse("0011"))


def test_large_capacity_equals_unbounded():
    for bits in itertools.product((0, 1), repeat=8):
        cfg = BallConfig(bits)
        assert evolve(cfg, 8) == evolve(cfg, INF)


@pytest.mark.parametrize("text, value", [("inf", INF), ("3", 3), ("∞", INF), (" 1 ", 1)])
def test_parse_capacity(text, value):
    assert parse_capacity(text) == value


@pytest.mark.parametrize("text", ["0", "-2", "x", "1.5"])
def test_parse_capacity_rejects(text):
    with pytest.raises(ValueError):
        parse_capacity(text)


def test_negative_steps_rejected():
    with pytest.raises(ValueError):
        evolve_n(ETA_B, INF, -1)


def test_empty_stays_empty():
    assert evolve(BallConfig(), INF) == BallConfig()
