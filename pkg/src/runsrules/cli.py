"""Command-line interface: ``calibrate``, ``evaluate``, ``table``, ``simulate``.

Exit codes: 0 on success, 1 when a computation fails, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass

from runsrules.calibrate import CalibrationError, calibrate_limit
from runsrules.engine import CannotSignalError, DEFAULT_LEVELS, arl, chain_for, percentiles, sd
from runsrules.mc import MIN_REPLICATIONS, SimulationCapExceeded, estimate
from runsrules.rules import Kind, SchemeError, SchemeSpec, parse_scheme
from runsrules.tables import build_table, format_shift, render_csv, render_text

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2
STAT_CHOICES = ("arl", "sd", "percentiles", "sir")
PCT_COLUMNS = ("p5", "p25", "p50", "p75", "p95")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class ShiftGrid:
    """``start:stop:step`` range plus explicit extra shifts."""

    start: float | None = None
    stop: float | None = None
    step: float | None = None
    extra: tuple[float, ...] = ()

    @classmethod
    def parse(cls, text: str) -> ShiftGrid:
        parts = [p for p in text.split(",") if p.strip()]
        if not parts:
            raise UsageError("empty shift grid")
        try:
            if ":" in parts[0]:
                fields = parts[0].split(":")
                if len(fields) != 3:
                    raise UsageError(f"range {parts[0]!r} must be start:stop:step")
                start, stop, step = (float(f) for f in fields)
                extra = tuple(float(p) for p in parts[1:])
                grid = cls(start, stop, step, extra)
            else:
                grid = cls(extra=tuple(float(p) for p in parts))
        except ValueError as err:
            raise UsageError(f"bad shift grid {text!r}: {err}") from None
        grid.expand()
        return grid

    def expand(self) -> list[float]:
        values = list(self.extra)
        if self.start is not None:
            if not self.step > 0:
                raise UsageError("grid step must be positive")
            if self.stop < self.start:
                raise UsageError("grid stop lies below start")
            count = math.floor((self.stop - self.start) / self.step + 1e-9)
            values += [self.start + k * self.step for k in range(count + 1)]
        if any(not math.isfinite(v) for v in values):
            raise UsageError("shifts must be finite")
        return sorted({round(v, 10) for v in values})


def _scheme(args) -> SchemeSpec:
    scheme = parse_scheme(args.scheme, we_run_length=args.we_run_length)
    if scheme.kind is Kind.WESTERN_ELECTRIC:
        return scheme
    if args.limit is None:
        raise UsageError(f"scheme {scheme.name} needs --limit")
    return scheme.with_limit(args.limit)


def cmd_calibrate(args) -> str:
    scheme = parse_scheme(args.scheme)
    if scheme.kind is Kind.WESTERN_ELECTRIC:
        raise UsageError("Western Electric limits are fixed; nothing to calibrate")
    result = calibrate_limit(scheme, args.arl0, args.tol)
    if args.format == "csv":
        return (
            "scheme,target_arl0,limit,achieved_arl0,iterations,bracket_width\n"
            f"{scheme.name},{args.arl0:g},{result.limit:.6f},{result.achieved_arl0:.6f},"
            f"{result.iterations},{result.bracket_width:.3e}\n"
        )
    return (
        f"scheme         {scheme.name}\n"
        f"target ARL0    {args.arl0:g}\n"
        f"limit          +/-{result.limit:.6f}\n"
        f"achieved ARL0  {result.achieved_arl0:.6f}\n"
        f"iterations     {result.iterations}\n"
        f"bracket width  {result.bracket_width:.3e}\n"
    )


def cmd_evaluate(args) -> str:
    scheme = _scheme(args)
    stats = [s.strip() for s in args.stats.split(",") if s.strip()]
    unknown = set(stats) - set(STAT_CHOICES)
    if unknown or not stats:
        raise UsageError(f"--stats must be drawn from {', '.join(STAT_CHOICES)}")
    columns = [c for c in ("arl", "sd") if c in stats]
    if "percentiles" in stats:
        columns += PCT_COLUMNS
    if "sir" in stats:
        columns.append("sir")
    limit = scheme.limit if scheme.limit is not None else 3.0

    rows = []
    for shift in ShiftGrid.parse(args.shifts).expand():
        chain = chain_for(scheme, shift)
        values = {}
        if "arl" in columns:
            values["arl"] = f"{arl(chain):.2f}"
        if "sd" in columns:
            values["sd"] = f"{sd(chain):.2f}"
        if "percentiles" in stats or "sir" in stats:
            pct = percentiles(chain, DEFAULT_LEVELS)
            for col, level in zip(PCT_COLUMNS, DEFAULT_LEVELS):
                values[col] = str(pct[level])
            values["sir"] = f"{(pct[0.75] - pct[0.25]) / 2:.2f}"
        rows.append([scheme.name, f"{limit:.6f}", format_shift(shift), *(values[c] for c in columns)])

    header = ["scheme", "limit", "shift", *columns]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    return "".join(
        "  ".join(c.rjust(w) if i > 2 else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))).rstrip()
        + "\n"
        for r in [header, *rows]
    )


def cmd_table(args) -> str:
    result = build_table(args.table_id, we_run_length=args.we_run_length, workers=args.workers)
    return render_csv(result) if args.format == "csv" else render_text(result)


def cmd_simulate(args) -> str:
    scheme = _scheme(args)
    if args.reps < MIN_REPLICATIONS:
        raise UsageError(f"--reps must be at least {MIN_REPLICATIONS}")
    est = estimate(scheme, args.shift, args.reps, args.seed, workers=args.workers)
    chain = chain_for(scheme, args.shift)
    exact = arl(chain)
    exact_pct = percentiles(chain, DEFAULT_LEVELS)
    z = (est.mean - exact) / est.standard_error if est.standard_error > 0 else 0.0
    limit = scheme.limit if scheme.limit is not None else 3.0
    if args.format == "csv":
        return (
            "scheme,limit,shift,replications,seed,mean,sd,standard_error,exact_arl,z\n"
            f"{scheme.name},{limit:.6f},{format_shift(args.shift)},{est.replications},{est.seed},"
            f"{est.mean:.4f},{est.sd:.4f},{est.standard_error:.4f},{exact:.4f},{z:.3f}\n"
        )
    sim_pct = " ".join(str(est.percentile_estimates[level]) for level in DEFAULT_LEVELS)
    ex_pct = " ".join(str(exact_pct[level]) for level in DEFAULT_LEVELS)
    return (
        f"scheme            {scheme.name}  limit +/-{limit:.6f}  shift {format_shift(args.shift)}\n"
        f"replications      {est.replications}  seed {est.seed}\n"
        f"simulated ARL     {est.mean:.4f}  (SE {est.standard_error:.4f}, SD {est.sd:.4f})\n"
        f"exact ARL         {exact:.4f}  (SD {sd(chain):.4f})\n"
        f"z                 {z:+.3f}\n"
        f"percentiles 5/25/50/75/95  simulated {sim_pct}  exact {ex_pct}\n"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="runsrules", description="Exact run-length analysis of Shewhart charts with runs rules."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--out", help="write output to this file instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", parents=[common], help="find the limit for a target in-control ARL")
    p.add_argument("--scheme", required=True, help="r/m or M-r/m")
    p.add_argument("--arl0", type=float, default=370.4)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("evaluate", parents=[common], help="run-length statistics over a shift grid")
    p.add_argument("--scheme", required=True, help="r/m, M-r/m or C1234")
    p.add_argument("--limit", type=float)
    p.add_argument("--shifts", default="0:3:0.2,3.5,4.0", help="start:stop:step[,extra,...]")
    p.add_argument("--stats", default="arl,sd", help="comma list of arl, sd, percentiles, sir")
    p.add_argument("--we-run-length", type=int, choices=(8, 9), default=8)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("table", parents=[common], help="reproduce a published table (1-5)")
    p.add_argument("table_id", type=int, choices=range(1, 6), metavar="{1,2,3,4,5}")
    p.add_argument("--we-run-length", type=int, choices=(8, 9), default=8)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo check against the exact ARL")
    p.add_argument("--scheme", required=True)
    p.add_argument("--limit", type=float)
    p.add_argument("--shift", type=float, default=0.0)
    p.add_argument("--reps", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--we-run-length", type=int, choices=(8, 9), default=8)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except (UsageError, SchemeError) as err:
        print(f"{parser.prog} {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (CalibrationError, CannotSignalError, SimulationCapExceeded, ArithmeticError) as err:
        print(f"{parser.prog} {args.command}: computation failed: {err}", file=sys.stderr)
        return EXIT_FAILURE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
