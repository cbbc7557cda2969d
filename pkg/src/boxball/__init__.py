"""Box-ball system with seat numbers, the KKR bijection and slot decompositions."""

from .config import BallConfig, ParseError, parse, random_config, render
from .evolution import INF, Infinite, carrier_trace, evolve, evolve_n, parse_capacity
from .kkr import (
    InterlacingPair,
    Partition,
    RiggedConfig,
    energy_vacancy,
    interlacing_sequence,
    kkr_forward,
    kkr_inverse,
    shift_riggings,
    singular_rows,
)
from .seats import (
    INFINITY,
    SeatNumberConfig,
    SeatTrace,
    SeatZeta,
    m_value,
    s_anchor,
    seat_numbers,
    seat_trace,
    tau,
    xi,
    zeta,
)
from .slots import (
    SlotConfig,
    SlotZeta,
    Soliton,
    SolitonDecomposition,
    reconstruct,
    slot_config,
    slot_decomposition,
    ts_decompose,
)
from .verify import CheckReport, check_all, exhaustive, fuzz

__all__ = [
    "BallConfig", "ParseError", "parse", "random_config", "render",
    "INF", "Infinite", "carrier_trace", "evolve", "evolve_n", "parse_capacity",
    "InterlacingPair", "Partition", "RiggedConfig", "energy_vacancy", "interlacing_sequence",
    "kkr_forward", "kkr_inverse", "shift_riggings", "singular_rows",
    "INFINITY", "SeatNumberConfig", "SeatTrace", "SeatZeta", "m_value", "s_anchor",
    "seat_numbers", "seat_trace", "tau", "xi", "zeta",
    "SlotConfig", "SlotZeta", "Soliton", "SolitonDecomposition", "reconstruct",
    "slot_config", "slot_decomposition", "ts_decompose",
    "CheckReport", "check_all", "exhaustive", "fuzz",
]
