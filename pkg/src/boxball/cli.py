"""Command-line entry point: ``boxball <subcommand> [FILE] [options]``.

Configurations are read one per line from FILE or stdin. Table output uses
fixed-width cells so that golden files diff cleanly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable, Optional, Sequence, TextIO

from . import verify
from .config import BallConfig, ParseError, parse, random_config, render
from .evolution import INF, carrier_trace, evolve_n, format_capacity, parse_capacity
from .kkr import RiggedConfig, kkr_forward
from .seats import seat_numbers, seat_trace, zeta
from .slots import INFINITY, slot_config, slot_decomposition, ts_decompose

FORMATS = ("table", "json", "csv")


class UsageError(Exception):
    pass


# -- formatting helpers --------------------------------------------------------------


def _grid(rows: Sequence[Sequence[str]]) -> list[str]:
    """Label column left-aligned, every other column right-aligned to the widest cell."""
    if not rows:
        return []
    label_w = max(len(r[0]) for r in rows)
    ncols = max(len(r) for r in rows)
    cell_w = max((len(c) for r in rows for c in r[1:]), default=0)
    out = []
    for r in rows:
        cells = [r[0].ljust(label_w)] + [c.rjust(cell_w) for c in r[1:]]
        cells += [" " * cell_w] * (ncols - len(r))
        out.append(" ".join(cells).rstrip())
    return out


def _csv(rows: Sequence[Sequence[object]]) -> list[str]:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().splitlines()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _inf(v) -> str:
    return "inf" if v == INFINITY else str(v)


def _color(text: str, code: str, stream: TextIO) -> str:
    if os.environ.get("BOXBALL_COLOR", "1") == "0" or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


# -- subcommands ---------------------------------------------------------------------


def _evolve(cfg: BallConfig, args) -> list[str]:
    cap = args.capacity
    states = evolve_n(cfg, cap, args.steps)
    window = args.window
    if window is None:
        window = max([len(cfg)] + [s.last_ball for s in states])
    rows = [render(s.stripped(), window) for s in states]
    if args.format == "json":
        return [_json({"input": str(cfg), "capacity": format_capacity(cap), "states": rows})]
    if args.format == "csv":
        return _csv([["t"] + list(range(1, window + 1))] + [[t] + list(r) for t, r in enumerate(rows)])
    return rows


def _seats(cfg: BallConfig, args) -> list[str]:
    window = args.window if args.window is not None else max(len(cfg), cfg.safe_length)
    snc = seat_numbers(cfg, window)
    trace = seat_trace(cfg, window)
    top = snc.max_level
    # W with capacity at the highest seat already equals the unbounded carrier
    cap = args.capacity if args.capacity is not None else (top or INF)
    loads = carrier_trace(cfg, cap, window)
    xs = range(window + 1)
    rows: list[list[str]] = [["x"] + [str(x) for x in xs]]
    rows.append(["η(x)", ""] + [str(cfg[x]) for x in xs if x])
    rows.append([f"W_{format_capacity(cap)}(x)"] + [str(v) for v in loads])
    for k in range(1, top + 1):
        rows.append([f"𝒲_{k}(x)"] + [str(trace(k, x)) for x in xs])
        rows.append([f"η↑_{k}(x)", ""] + [str(snc.indicator(k, "up", x)) for x in xs if x])
        rows.append([f"η↓_{k}(x)", ""] + [str(snc.indicator(k, "down", x)) for x in xs if x])
    rows.append(["r(x)", ""] + [str(int(snc.is_record(x))) for x in xs if x])
    if args.format == "json":
        return [
            _json(
                {
                    "input": str(cfg),
                    "window": window,
                    "marks": list(snc.marks),
                    "up": {str(k): list(v) for k, v in snc.up.items()},
                    "down": {str(k): list(v) for k, v in snc.down.items()},
                    "records": list(snc.records),
                }
            )
        ]
    if args.format == "csv":
        return _csv(rows)
    return _grid(rows)


def _young(rc: RiggedConfig) -> list[list[str]]:
    return [["□" * k, str(j)] for k, j in rc.display_order()]


def _kkr(cfg: BallConfig, args) -> list[str]:
    rc = kkr_forward(cfg, args.window)
    mu = rc.partition
    if args.format == "json":
        data = rc.to_json()
        data["lambda"] = list(mu.conjugate())
        data["input"] = str(cfg)
        return [_json(data)]
    if args.format == "csv":
        return _csv([["k", "J"]] + [[k, j] for k, j in rc.display_order()])
    head = [f"μ = ({','.join(map(str, mu.rows))})", f"λ = ({','.join(map(str, mu.conjugate()))})"]
    body = _young(rc)
    width = max((len(r[0]) for r in body), default=0)
    jw = max((len(r[1]) for r in body), default=0)
    return head + [f"{b.ljust(width)} {j.rjust(jw)}" for b, j in body]


def _slots(cfg: BallConfig, args) -> list[str]:
    decomp = ts_decompose(cfg)
    nu = slot_config(cfg)
    window = args.window if args.window is not None else nu.length
    if window < cfg.last_ball:
        raise UsageError(f"window {window} would truncate ball at {cfg.last_ball}")
    xs = range(1, window + 1)
    if args.format == "json":
        return [
            _json(
                {
                    "input": str(cfg),
                    "nu": [None if nu(x) == INFINITY else nu(x) for x in xs],
                    "solitons": [s.to_json() for s in decomp.solitons],
                }
            )
        ]
    rows = [["x"] + [str(x) for x in xs], ["η(x)"] + [str(cfg[x]) for x in xs], ["ν(x)"] + [_inf(nu(x)) for x in xs]]
    if args.format == "csv":
        return _csv(rows)
    return _grid(rows) + [_json([s.to_json() for s in decomp.solitons])]


def _zeta_tables(cfg: BallConfig) -> dict[str, dict[tuple[int, int], int]]:
    seat = zeta(seat_numbers(cfg)).entries
    slot = slot_decomposition(cfg).entries
    rc = kkr_forward(cfg)
    from_rc: dict[tuple[int, int], int] = {}
    for k, vals in rc.riggings.items():
        for j in vals:
            from_rc[(k, j + k)] = from_rc.get((k, j + k), 0) + 1
    return {"seat": seat, "slot": slot, "kkr": dict(sorted(from_rc.items()))}


def _zeta(cfg: BallConfig, args) -> list[str]:
    tables = _zeta_tables(cfg)
    names = ("seat", "slot", "kkr")
    if args.format == "json":
        return [
            _json(
                {
                    "input": str(cfg),
                    **{n: [{"k": k, "i": i, "count": c} for (k, i), c in sorted(t.items())] for n, t in tables.items()},
                }
            )
        ]
    if args.format == "csv":
        rows: list[list[object]] = [["route", "k", "i", "count"]]
        for n in names:
            rows += [[n, k, i, c] for (k, i), c in sorted(tables[n].items())]
        return _csv(rows)
    # three (k, i, count) tables side by side
    blocks = []
    for n, title in zip(names, ("seat ζ", "slot ζ~", "KKR J+k")):
        body = [[str(k), str(i), str(c)] for (k, i), c in sorted(tables[n].items())]
        blocks.append((title, [["k", "i", "n"]] + body))
    height = max(len(b[1]) for b in blocks)
    w = max(len(c) for _, b in blocks for r in b for c in r)
    block_w = max(3 * w + 2, max(len(t) for t, _ in blocks))
    lines = ["   ".join(t.ljust(block_w) for t, _ in blocks).rstrip()]
    for r in range(height):
        parts = []
        for _, b in blocks:
            cell = " ".join(c.rjust(w) for c in b[r]) if r < len(b) else ""
            parts.append(cell.ljust(block_w))
        lines.append("   ".join(parts).rstrip())
    return lines


RECORD_COMMANDS: dict[str, Callable] = {
    "evolve": _evolve,
    "seats": _seats,
    "kkr": _kkr,
    "slots": _slots,
    "zeta": _zeta,
}


def _read_configs(path: Optional[str], stdin: TextIO) -> list[BallConfig]:
    if path is None or path == "-":
        text = stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "" and len(lines) > 1:
        lines.pop()  # final newline ends the last line, it does not start a new one
    configs = []
    for n, line in enumerate(lines, start=1):
        try:
            configs.append(parse(line))
        except ParseError as exc:
            raise UsageError(f"line {n}: {exc}") from None
    return configs


def _verify(args, stdin: TextIO, stdout: TextIO) -> int:
    caps = args.caps
    if args.exhaustive is not None and args.fuzz is not None:
        raise UsageError("--exhaustive and --fuzz are mutually exclusive")
    if args.exhaustive is not None:
        report = verify.exhaustive(args.exhaustive, caps, args.steps, args.workers)
    elif args.fuzz is not None:
        report = verify.fuzz(args.fuzz, args.length, args.density, args.seed, caps, args.steps, args.workers)
    else:
        report = verify.CheckReport({n: verify.CheckResult(n) for n in verify.CHECK_NAMES})
        for cfg in _read_configs(args.file, stdin):
            report.merge(verify.check_all(cfg, caps, args.steps))
    if args.format == "json":
        stdout.write(report.dumps(timing=args.timing) + "\n")
    elif args.format == "csv":
        rows = [["name", "status", "passed", "failed"]]
        rows += [[r.name, "pass" if r.ok else "fail", r.passed, r.failed] for r in sorted(report.results.values(), key=lambda r: r.name)]
        stdout.write("\n".join(_csv(rows)) + "\n")
    else:
        for line in report.summary_lines():
            status, rest = line.split(" ", 1)
            stdout.write(_color(status, "32" if status == "PASS" else "31", stdout) + " " + rest + "\n")
        stdout.write(f"{'OK' if report.ok else 'FAILED'}: {report.configs} configurations\n")
        if args.timing:
            stdout.write(f"{report.seconds:.2f}s\n")
    return 0 if report.ok else 1


def _random(args, stdout: TextIO) -> int:
    cfg = random_config(args.length, args.density, args.seed)
    if args.format == "json":
        stdout.write(_json({"config": str(cfg), "length": args.length, "density": args.density, "seed": args.seed}) + "\n")
    else:
        stdout.write(str(cfg) + "\n")
    return 0


# -- argument parsing -------------------------------------------------------------------


def _capacity(text: str):
    try:
        return parse_capacity(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _caps(text: str):
    try:
        return tuple(parse_capacity(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _density(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"density must lie in [0, 1], got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")

    parser = argparse.ArgumentParser(prog="boxball", description="Box-ball system: seats, KKR and slots.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{evolve,seats,kkr,slots,zeta,verify,random}")

    def record_parser(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("file", nargs="?", help="one configuration per line (default: stdin)")
        p.add_argument("--window", type=_nonneg, default=None, help="sites to show")
        return p

    p = record_parser("evolve", "time evolution T_cap")
    p.add_argument("--capacity", type=_capacity, default=INF)
    p.add_argument("--steps", type=_nonneg, default=1)

    p = record_parser("seats", "carrier with seat numbers")
    p.add_argument("--capacity", type=_capacity, default=None, help="capacity of the W row (default: highest seat)")

    record_parser("kkr", "rigged configuration (--window: stop after that site)")
    record_parser("slots", "slot configuration and solitons")
    record_parser("zeta", "seat, slot and KKR decompositions side by side")

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks")
    p.add_argument("file", nargs="?")
    p.add_argument("--exhaustive", type=int, metavar="N")
    p.add_argument("--fuzz", type=_nonneg, metavar="COUNT")
    p.add_argument("--caps", type=_caps, default=verify.DEFAULT_CAPS)
    p.add_argument("--steps", type=_nonneg, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length", type=_nonneg, default=200)
    p.add_argument("--density", type=_density, default=0.4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="report wall-clock time")

    p = sub.add_parser("random", parents=[common], help="random configuration")
    p.add_argument("--length", type=_nonneg, default=20)
    p.add_argument("--density", type=_density, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            return _verify(args, stdin, stdout)
        if args.command == "random":
            return _random(args, stdout)
        handler = RECORD_COMMANDS[args.command]
        configs = _read_configs(args.file, stdin)
        for n, cfg in enumerate(configs):
            lines = handler(cfg, args)
            if n and args.format == "table":
                stdout.write("\n")  # blank line between records
            stdout.write("".join(line + "\n" for line in lines) if lines else "\n")
    except (UsageError, ValueError, OSError) as exc:
        print(f"boxball {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


run = main


if __name__ == "__main__":
    sys.exit(main())
