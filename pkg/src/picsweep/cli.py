"""Command-line interface: ``picsweep simulate`` and ``picsweep benchmark``.

Exit codes: 0 success, 1 netlist parse error, 2 simulation error, 64 bad
flags or arguments.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
from typing import Sequence

import numpy as np

from .circuit import flatten
from .errors import ParseError, PicsweepError, UnknownPin
from .parser import parse_file
from .reference import mzi_chain
from .simulate import DEFAULT_POINTS, SweepResult, SweepSpec, run_sweep
from .cascade import reduce_circuit

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_SIM = 2
EXIT_USAGE = 64

DEFAULT_START = 1500e-9
DEFAULT_STOP = 1600e-9

RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["format", "version", "ports", "wavelength_m", "frequency_Hz", "pairs"],
    "properties": {
        "format": {"const": "picsweep-sweep"},
        "version": {"const": 1},
        "ports": {"type": "array", "items": {"type": "string"}},
        "wavelength_m": {"type": "array", "items": {"type": "number"}},
        "frequency_Hz": {"type": "array", "items": {"type": "number"}},
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "re", "im", "power", "phase_rad"],
                "properties": {
                    "from": {"type": "string"},
                    "to": {"type": "string"},
                    "re": {"type": "array", "items": {"type": "number"}},
                    "im": {"type": "array", "items": {"type": "number"}},
                    "power": {"type": "array", "items": {"type": "number"}},
                    "phase_rad": {"type": "array", "items": {"type": "number"}},
                },
            },
        },
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _counts(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("counts must be >= 1")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="picsweep", description="Photonic circuit S-parameter sweeps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="sweep a .phc netlist")
    sim.add_argument("netlist")
    sim.add_argument("--from", dest="from_pins", action="append", default=[], metavar="PIN")
    sim.add_argument("--to", dest="to_pins", action="append", default=[], metavar="PIN")
    sim.add_argument("--all-pairs", action="store_true", help="report every ordered pin pair")
    sim.add_argument("--start", type=float, help="start wavelength, m")
    sim.add_argument("--stop", type=float, help="stop wavelength, m")
    sim.add_argument("--points", type=int)
    sim.add_argument("--format", choices=("csv", "json"), default="csv")
    sim.add_argument("--out", help="output file (default stdout)")
    sim.add_argument("--workers", type=int, default=1)

    bench = sub.add_parser("benchmark", help="time cascaded MZI chains")
    bench.add_argument("--mzi-counts", type=_counts, default=[1, 10, 50, 100])
    bench.add_argument("--repeats", type=int, default=10)
    bench.add_argument("--points", type=int, default=DEFAULT_POINTS)
    return parser


def _pairs(result: SweepResult, args) -> list[tuple[str, str]]:
    pins = result.pins
    if args.all_pairs:
        if args.from_pins or args.to_pins:
            raise UsageError("--all-pairs cannot be combined with --from/--to")
        return [(a, b) for a in pins for b in pins]
    froms, tos = list(args.from_pins), list(args.to_pins)
    if not froms and not tos:
        if len(pins) != 2:
            raise UsageError(f"circuit has {len(pins)} external pins; give --from/--to or --all-pairs")
        return [(pins[0], pins[1])]
    if len(pins) == 2 and (not froms or not tos):
        # the other pin is the only sensible default
        given = [pins[result.resolve(p)] for p in froms or tos]
        other = [pins[1 - pins.index(p)] for p in given]
        froms, tos = (given, other) if froms else (other, given)
    if len(froms) != len(tos):
        raise UsageError("--from and --to must be given in pairs")
    pairs = []
    for a, b in zip(froms, tos):
        pairs.append((pins[result.resolve(a)], pins[result.resolve(b)]))
    return pairs


def _g(x: float) -> str:
    return f"{x:.17g}"


def format_csv(result: SweepResult, pairs: Sequence[tuple[str, str]]) -> str:
    cols = []
    header = ["wavelength_m", "frequency_Hz"]
    for a, b in pairs:
        s = result.transmission(a, b)
        cols += [s.real, s.imag, np.abs(s) ** 2, result.phase(a, b)]
        header += [f"{a}->{b}.{part}" for part in ("re", "im", "power", "phase_rad")]
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    wl, fr = result.wavelengths, result.frequencies
    for i in range(len(fr)):
        row = [_g(wl[i]), _g(fr[i])] + [_g(c[i]) for c in cols]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def to_json(result: SweepResult, pairs: Sequence[tuple[str, str]]) -> dict:
    out = {
        "format": "picsweep-sweep",
        "version": 1,
        "ports": list(result.pins),
        "wavelength_m": result.wavelengths.tolist(),
        "frequency_Hz": result.frequencies.tolist(),
        "pairs": [],
    }
    for a, b in pairs:
        s = result.transmission(a, b)
        out["pairs"].append(
            {
                "from": a,
                "to": b,
                "re": s.real.tolist(),
                "im": s.imag.tolist(),
                "power": (np.abs(s) ** 2).tolist(),
                "phase_rad": result.phase(a, b).tolist(),
            }
        )
    return out


def _sweep_spec(args, from_file: SweepSpec | None) -> SweepSpec:
    start = args.start if args.start is not None else (from_file.start if from_file else DEFAULT_START)
    stop = args.stop if args.stop is not None else (from_file.stop if from_file else DEFAULT_STOP)
    points = args.points if args.points is not None else (from_file.n_points if from_file else DEFAULT_POINTS)
    try:
        return SweepSpec(start, stop, points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_simulate(args, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        circuit, file_sweep = parse_file(args.netlist)
    except ParseError as exc:
        print(f"parse error: {args.netlist}: {exc}", file=stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read {args.netlist}: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        spec = _sweep_spec(args, file_sweep)
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        result = run_sweep(circuit, spec, workers=args.workers)
    except PicsweepError as exc:
        print(f"simulation error: {exc}", file=stderr)
        return EXIT_SIM
    try:
        pairs = _pairs(result, args)
    except (UsageError, UnknownPin) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE

    if args.format == "csv":
        text = format_csv(result, pairs)
    else:
        text = json.dumps(to_json(result, pairs)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def benchmark(counts: Sequence[int], repeats: int = 10, points: int = DEFAULT_POINTS) -> list[tuple[int, float]]:
    """Mean reduce time (model evaluation + cascade) per MZI chain length."""
    grid = SweepSpec(DEFAULT_START, DEFAULT_STOP, points).grid()
    rows = []
    for count in counts:
        flat = flatten(mzi_chain(count))
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            reduce_circuit(flat, grid)
            times.append(time.perf_counter() - t0)
        rows.append((count, float(np.mean(times))))
    return rows


def cmd_benchmark(args, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if args.repeats < 1 or args.points < 2:
        print("error: --repeats must be >= 1 and --points >= 2", file=sys.stderr)
        return EXIT_USAGE
    rows = benchmark(args.mzi_counts, args.repeats, args.points)
    base = min(rows, key=lambda r: r[0])[1]
    stdout.write(f"{'mzis':>6} {'mean_s':>12} {'ratio':>8}\n")
    for count, mean in rows:
        stdout.write(f"{count:>6d} {mean:>12.6f} {mean / base:>8.2f}\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return cmd_simulate(args)
        return cmd_benchmark(args)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
