"""Recompute the published run-length tables and compare cell by cell.

Control limits are always recalibrated from the target in-control ARL,
never copied, so every table doubles as an end-to-end calibration check.
Cells that disagree with the published value beyond tolerance are
footnoted.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from runsrules import published
from runsrules.calibrate import calibrate_limit
from runsrules.engine import DEFAULT_LEVELS, arl, chain_for, percentiles, sd
from runsrules.rules import SchemeSpec, parse_scheme

PAPER_SHIFTS = tuple(round(0.2 * k, 1) for k in range(16)) + (3.5, 4.0)
TABLE5_SHIFTS = tuple(round(0.2 * k, 1) for k in range(16))
TARGET_ARL0 = 370.4
TABLE5_TARGET_ARL0 = 94.57
PCT_SCHEMES = {2: "M-2/5", 3: "M-3/5", 4: "M-4/5"}
WE_TOLERANCE = 0.05

TITLES = {
    1: "ARL and SD values for r/r, r/m and M-r/m schemes: ARL_in = 370.40",
    2: "Percentiles and ARL values for the M-2/5 scheme: ARL_in = 370.4",
    3: "Percentiles and ARL values for the M-3/5 scheme: ARL_in = 370.4",
    4: "Percentiles and ARL values for the M-4/5 scheme: ARL_in = 370.4",
    5: "ARL and SIR values for C1234 and M-r/5 schemes",
}


def arl_tolerance(value: float) -> float:
    return max(0.05, 0.005 * value)


@dataclass
class Cell:
    scheme: str
    limit: float | None
    shift: float
    arl: float
    sd: float | None = None
    percentiles: tuple[int, ...] | None = None
    sir: float | None = None
    notes: list[str] = field(default_factory=list)


@dataclass
class TableResult:
    table_id: int
    title: str
    schemes: tuple[str, ...]
    limits: dict[str, float | None]
    rows: list[tuple[float, dict[str, Cell]]]
    footnotes: list[str] = field(default_factory=list)


def _evaluate(job) -> Cell:
    scheme, shift, want_sd, levels = job
    chain = chain_for(scheme, shift)
    cell = Cell(scheme.name, scheme.limit, shift, arl(chain))
    if want_sd:
        cell.sd = sd(chain)
    if levels:
        pct = percentiles(chain, levels)
        cell.percentiles = tuple(pct[level] for level in levels)
        if 0.25 in pct and 0.75 in pct:
            cell.sir = (pct[0.75] - pct[0.25]) / 2
    return cell


def _run(jobs, workers: int) -> list[Cell]:
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate, jobs, chunksize=8))
    return [_evaluate(job) for job in jobs]


def _calibrated(names, target) -> dict[str, SchemeSpec]:
    return {name: parse_scheme(name).with_limit(calibrate_limit(parse_scheme(name), target).limit)
            for name in names}


def table1(workers: int = 1) -> TableResult:
    schemes = _calibrated(published.TABLE1_SCHEMES, TARGET_ARL0)
    jobs = [(schemes[n], shift, True, ()) for shift in PAPER_SHIFTS for n in published.TABLE1_SCHEMES]
    cells = iter(_run(jobs, workers))
    rows = [(shift, {n: next(cells) for n in published.TABLE1_SCHEMES}) for shift in PAPER_SHIFTS]
    result = TableResult(1, TITLES[1], published.TABLE1_SCHEMES,
                         {n: s.limit for n, s in schemes.items()}, rows)
    for shift, row in rows:
        for name, cell in row.items():
            pub_arl, pub_sd = published.TABLE1[shift][name]
            suspect = (shift, name) in published.SUSPECT_TABLE1
            for what, ours, theirs in (("ARL", cell.arl, pub_arl), ("SD", cell.sd, pub_sd)):
                if abs(ours - theirs) > arl_tolerance(theirs):
                    tag = " (known suspect cell)" if suspect else ""
                    _note(result, cell, f"{name} at shift {shift:.1f}: {what} {ours:.2f} "
                                        f"vs published {theirs:.2f}{tag}")
    return result


def table_percentiles(table_id: int, workers: int = 1) -> TableResult:
    name = PCT_SCHEMES[table_id]
    scheme = _calibrated([name], TARGET_ARL0)[name]
    published_rows = getattr(published, f"TABLE{table_id}")
    cells = _run([(scheme, shift, False, DEFAULT_LEVELS) for shift in PAPER_SHIFTS], workers)
    rows = [(cell.shift, {name: cell}) for cell in cells]
    result = TableResult(table_id, TITLES[table_id], (name,), {name: scheme.limit}, rows)
    for cell in cells:
        pub_arl, pub_pct = published_rows[cell.shift]
        if abs(cell.arl - pub_arl) > arl_tolerance(pub_arl):
            _note(result, cell, f"{name} at shift {cell.shift:.1f}: ARL {cell.arl:.2f} "
                                f"vs published {pub_arl:.2f}")
        if cell.percentiles != pub_pct:
            _note(result, cell, f"{name} at shift {cell.shift:.1f}: percentiles "
                                f"{_ints(cell.percentiles)} vs published {_ints(pub_pct)}")
    return result


def table5(we_run_length: int = 8, workers: int = 1) -> TableResult:
    mr5 = ("M-2/5", "M-3/5", "M-4/5")
    schemes = {"C1234": parse_scheme("C1234", we_run_length=we_run_length)}
    schemes.update(_calibrated(mr5, TABLE5_TARGET_ARL0))
    names = published.TABLE5_SCHEMES
    jobs = [(schemes[n], shift, False, (0.25, 0.75)) for shift in TABLE5_SHIFTS for n in names]
    cells = iter(_run(jobs, workers))
    rows = [(shift, {n: next(cells) for n in names}) for shift in TABLE5_SHIFTS]
    limits = {n: s.limit for n, s in schemes.items()}
    limits["C1234"] = 3.0
    result = TableResult(5, TITLES[5], names, limits, rows)

    variants = {n: _evaluate((parse_scheme("C1234", we_run_length=n), 0.0, False, ())).arl
                for n in (8, 9)}
    palm = published.TABLE5[0.0]["C1234"][0]
    closest = min(variants, key=lambda n: abs(variants[n] - palm))
    result.footnotes.append(
        f"C1234 uses a same-side run of {we_run_length}; in-control ARL is "
        f"{variants[8]:.2f} with a run of 8 and {variants[9]:.2f} with a run of 9 "
        f"(published {palm:.2f}); the run-of-{closest} variant is closer."
    )
    for shift, row in rows:
        for name, cell in row.items():
            pub_arl, pub_sir = published.TABLE5[shift][name]
            rel = abs(cell.arl - pub_arl) / pub_arl
            if name == "C1234":
                if rel > WE_TOLERANCE:
                    _note(result, cell, f"C1234 at shift {shift:.1f}: ARL {cell.arl:.2f} "
                                        f"vs published {pub_arl:.2f}")
                continue
            if rel > 0.01 or abs(cell.sir - pub_sir) > 0.5:
                _note(result, cell, f"{name} at shift {shift:.1f}: ARL {cell.arl:.2f} "
                                    f"(SIR {cell.sir:.2f}) vs published {pub_arl:.2f} ({pub_sir:.2f})")
    return result


def build_table(table_id: int, we_run_length: int = 8, workers: int = 1) -> TableResult:
    if table_id == 1:
        return table1(workers)
    if table_id in PCT_SCHEMES:
        return table_percentiles(table_id, workers)
    if table_id == 5:
        return table5(we_run_length, workers)
    raise ValueError(f"no table {table_id}; choose 1 to 5")


def _note(result: TableResult, cell: Cell, text: str) -> None:
    result.footnotes.append(text)
    cell.notes.append(f"[{len(result.footnotes)}]")


def _ints(values) -> str:
    return " ".join(str(v) for v in values)


def format_shift(shift: float) -> str:
    text = f"{shift:.1f}"
    return text if abs(float(text) - shift) < 1e-9 else f"{shift:g}"


def _cell_text(result: TableResult, cell: Cell) -> str:
    if result.table_id == 1:
        text = f"{cell.arl:.2f} ({cell.sd:.2f})"
    elif result.table_id == 5:
        text = f"{cell.arl:.2f} ({cell.sir:.2f})"
    else:
        text = f"{cell.arl:7.2f}  " + "  ".join(f"{p:>5d}" for p in cell.percentiles)
    return text + "".join(cell.notes)


def render_text(result: TableResult) -> str:
    lines = [f"Table {result.table_id}. {result.title}", ""]
    if result.table_id in PCT_SCHEMES:
        name = result.schemes[0]
        lines.append(f"Control limits: +/-{result.limits[name]:.6f}")
        header = ["Shift", "    ARL  " + "  ".join(f"{h:>5}" for h in ("5th", "25th", "50th", "75th", "95th"))]
        body = [[format_shift(shift), _cell_text(result, row[name])] for shift, row in result.rows]
    else:
        header = ["Shift", *result.schemes]
        limit_row = ["Limit", *(f"+/-{result.limits[n]:.6f}" for n in result.schemes)]
        body = [limit_row]
        for shift, row in result.rows:
            best = min(round(c.arl, 2) for c in row.values())
            cells = []
            for name in result.schemes:
                text = _cell_text(result, row[name])
                if result.table_id == 1 and shift > 0 and round(row[name].arl, 2) == best:
                    text += "*"
                cells.append(text)
            body.append([format_shift(shift), *cells])
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    for r in [header, *body]:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    if result.table_id == 1:
        lines += ["", "* lowest ARL at this nonzero shift"]
    if result.footnotes:
        lines.append("")
        lines += [f"[{k}] {text}" for k, text in enumerate(result.footnotes, start=1)]
    return "\n".join(lines) + "\n"


def render_csv(result: TableResult) -> str:
    if result.table_id == 1:
        columns = ["arl", "sd"]
    elif result.table_id == 5:
        columns = ["arl", "sir"]
    else:
        columns = ["arl", "p5", "p25", "p50", "p75", "p95"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scheme", "limit", "shift", *columns, "note"])
    for shift, row in result.rows:
        for name in result.schemes:
            cell = row[name]
            values = [f"{cell.arl:.2f}"]
            if "sd" in columns:
                values.append(f"{cell.sd:.2f}")
            if "sir" in columns:
                values.append(f"{cell.sir:.2f}")
            if "p5" in columns:
                values += [str(p) for p in cell.percentiles]
            note = " ".join(result.footnotes[int(n[1:-1]) - 1] for n in cell.notes)
            writer.writerow([name, f"{result.limits[name]:.6f}", format_shift(shift), *values, note])
    return buf.getvalue()
