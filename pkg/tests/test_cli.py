import subprocess
import sys

import pytest

from runsrules.cli import ShiftGrid, UsageError, main
from runsrules.tables import PAPER_SHIFTS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_calibrate_prints_limit(capsys):
    code, out, _ = run(capsys, "calibrate", "--scheme", "M-2/3", "--arl0", "370.4")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("limit"))
    assert line.split("+/-")[1].startswith("1.866")


def test_calibrate_shewhart(capsys):
    code, out, _ = run(capsys, "calibrate", "--scheme", "1/1", "--arl0", "370.4", "--format", "csv")
    assert code == 0
    header, row = out.strip().split("\n")
    assert header == "scheme,target_arl0,limit,achieved_arl0,iterations,bracket_width"
    assert row.split(",")[2].startswith("3.000")


@pytest.mark.parametrize(
    "argv",
    [
        ["calibrate", "--scheme", "3/2", "--arl0", "370.4"],
        ["calibrate", "--scheme", "C1234"],
        ["table", "6"],
        ["simulate", "--scheme", "2/2", "--limit", "1.781", "--reps", "10"],
        ["evaluate", "--scheme", "2/3"],
        ["evaluate", "--scheme", "2/3", "--limit", "1.9", "--stats", "mean"],
        ["evaluate", "--scheme", "2/3", "--limit", "1.9", "--shifts", "1:0:0.2"],
        ["evaluate", "--scheme", "2/3", "--limit", "1.9", "--shifts", "0:1:0"],
        ["evaluate", "--scheme", "2/3", "--limit", "1.9", "--shifts", "a,b"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_computational_failure_exits_1(capsys):
    code, _, err = run(capsys, "calibrate", "--scheme", "3/4", "--arl0", "3.5")
    assert code == 1
    assert "computation failed" in err


def test_evaluate_csv(capsys):
    code, out, _ = run(
        capsys, "evaluate", "--scheme", "M-4/5", "--limit", "0.949",
        "--shifts", "0:3:0.2,3.5,4.0", "--stats", "arl,sd", "--format", "csv",
    )
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "scheme,limit,shift,arl,sd"
    rows = {r.split(",")[2]: r.split(",") for r in lines[1:] if r}
    assert len(rows) == len(PAPER_SHIFTS)
    arl, sd = float(rows["1.0"][3]), float(rows["1.0"][4])
    # published 16.18 (13.03) was computed with the unrounded limit
    assert abs(arl - 16.18) <= 0.05 and abs(sd - 13.03) <= 0.07
    assert "\r" not in out


def test_evaluate_percentiles(capsys):
    code, out, _ = run(
        capsys, "evaluate", "--scheme", "M-3/5", "--limit", "1.358", "--shifts", "0.8",
        "--stats", "percentiles", "--format", "csv",
    )
    assert code == 0
    header, row = out.strip().split("\n")
    assert header == "scheme,limit,shift,p5,p25,p50,p75,p95"
    assert row.split(",")[3:] == ["4", "9", "19", "35", "71"]


def test_evaluate_full_header_order(capsys):
    code, out, _ = run(
        capsys, "evaluate", "--scheme", "2/3", "--limit", "1.929", "--shifts", "1.0",
        "--stats", "sir,percentiles,sd,arl", "--format", "csv",
    )
    assert code == 0
    assert out.split("\n")[0] == "scheme,limit,shift,arl,sd,p5,p25,p50,p75,p95,sir"


def test_evaluate_degenerate_grid(capsys):
    code, out, _ = run(capsys, "evaluate", "--scheme", "2/3", "--limit", "1.929",
                       "--shifts", "0:0:0.2", "--format", "csv")
    assert code == 0
    assert [r.split(",")[2] for r in out.strip().split("\n")[1:]] == ["0.0"]


def test_evaluate_text_and_western_electric(capsys):
    code, out, _ = run(capsys, "evaluate", "--scheme", "C1234", "--shifts", "0.0,1.0", "--stats", "arl,sir")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].split() == ["scheme", "limit", "shift", "arl", "sir"]
    assert lines[2].split()[3] == "9.22"


def test_out_option(tmp_path, capsys):
    target = tmp_path / "cal.txt"
    code, out, _ = run(capsys, "calibrate", "--scheme", "2/2", "--out", str(target))
    assert code == 0 and out == ""
    assert "1.781" in target.read_text()


def test_shift_grid():
    assert ShiftGrid.parse("0:3:0.2,3.5,4.0").expand() == list(PAPER_SHIFTS)
    assert ShiftGrid.parse("0:0:0.2").expand() == [0.0]
    assert ShiftGrid.parse("0.8").expand() == [0.8]
    assert ShiftGrid.parse("1.0,-1.0,1.0").expand() == [-1.0, 1.0]
    assert ShiftGrid.parse("0:1:0.25").expand() == [0.0, 0.25, 0.5, 0.75, 1.0]
    for bad in ["", "0:1", "0:1:-0.1", "x"]:
        with pytest.raises(UsageError):
            ShiftGrid.parse(bad)


def test_table_3_matches_published_percentiles_except_flagged(capsys):
    code, out, _ = run(capsys, "table", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "scheme,limit,shift,arl,p5,p25,p50,p75,p95,note"
    row = {l.split(",")[2]: l.split(",") for l in lines[1:]}
    assert row["0.8"][4:9] == ["4", "9", "19", "35", "71"]
    assert row["4.0"][4:9] == ["3"] * 5


def test_table_1_lowest_arl_at_2_6(capsys):
    code, out, _ = run(capsys, "table", "1")
    assert code == 0
    line = next(l for l in out.split("\n") if l.startswith("2.6 "))
    starred = [c for c in line.split("  ") if c.strip().endswith("*")]
    assert starred and all(c.strip().startswith("2.66") for c in starred)
    header = next(l for l in out.split("\n") if l.startswith("Shift")).split()
    cells = [c.strip() for c in line.split("  ") if c.strip()]
    winners = [header[i] for i, c in enumerate(cells) if c.endswith("*")]
    assert winners and all(w.startswith("M-") for w in winners)


def test_table_output_is_deterministic(capsys):
    first = run(capsys, "table", "5")[1]
    second = run(capsys, "table", "5", "--workers", "2")[1]
    assert first == second
    assert "run-of-8 variant is closer" in first


def test_simulate_is_deterministic(capsys):
    argv = ["simulate", "--scheme", "2/2", "--limit", "1.781", "--shift", "0.5", "--reps", "20000", "--seed", "1"]
    first = run(capsys, *argv)
    second = run(capsys, *argv, "--workers", "2")
    assert first[0] == 0
    assert first[1] == second[1]


@pytest.mark.slow
def test_simulate_agrees_with_exact(capsys):
    code, out, _ = run(capsys, "simulate", "--scheme", "2/2", "--limit", "1.781", "--shift", "0",
                       "--reps", "1000000", "--seed", "1", "--format", "csv")
    assert code == 0
    header, row = out.strip().split("\n")
    fields = dict(zip(header.split(","), row.split(",")))
    assert abs(float(fields["z"])) <= 3
    assert abs(float(fields["mean"]) - 370.40) <= 3 * float(fields["standard_error"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "runsrules", "calibrate", "--scheme", "1/1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "3.000" in proc.stdout
