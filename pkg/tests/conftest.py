import os
import sys

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from boxball.config import BallConfig, parse  # noqa: E402

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# the configuration used throughout the seat, KKR and slot examples
ETA_A = parse("110011101100011000")
# one 3-soliton and two 1-solitons, far apart
ETA_B = parse("1110000100100")


def configs(max_len: int = 40) -> st.SearchStrategy[BallConfig]:
    return st.lists(st.integers(0, 1), max_size=max_len).map(lambda b: BallConfig(tuple(b)))


def capacities() -> st.SearchStrategy:
    from boxball.evolution import INF

    return st.one_of(st.integers(1, 5), st.just(INF))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
