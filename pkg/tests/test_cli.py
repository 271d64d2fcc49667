import csv
import io
import json
import math
from fractions import Fraction

import pytest

from manetq.cli import main
from manetq.params import parse_rational


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_eval_exact(capsys):
    code, out, _ = run_cli(capsys, "eval", "--metric", "conn", "--n", "2", "--rho", "3/5", "--mode", "exact")
    assert code == 0
    rec = records(out)[0]
    assert rec["value"] == "1/5" and rec["provenance"] == "exact"
    code, out, _ = run_cli(capsys, "eval", "--metric", "coverage", "--n", "7", "--rho", "1/2")
    assert records(out)[0]["value"] == "1/1"


def test_eval_asym(capsys):
    code, out, _ = run_cli(capsys, "eval", "--metric", "conn", "--eta", "0", "--mode", "asym")
    assert code == 0
    assert records(out)[0]["value"] == pytest.approx(math.exp(-1))
    code, out, _ = run_cli(capsys, "eval", "--metric", "covered", "--n", "100", "--rho", "1/20", "--mode", "asym")
    assert code == 0


def test_eval_range_from_physical(capsys):
    code, out, _ = run_cli(capsys, "eval", "--metric", "seg", "--n", "3", "--r", "30", "--l", "1000")
    assert records(out)[0]["value"] == str(Fraction(97, 100) ** 2)


def test_eval_varying(capsys):
    code, out, _ = run_cli(capsys, "eval", "--metric", "seg", "--n", "4", "--rho", "1/4",
                           "--p-on", "0", "--convention", "formula")
    assert records(out)[0]["value"] == "4/3"


@pytest.mark.parametrize("argv, code", [
    (["eval", "--metric", "bogus", "--n", "2", "--rho", "1/2"], 1),
    (["eval", "--metric", "conn", "--n", "2", "--rho", "abc"], 1),
    (["eval", "--metric", "conn", "--n", "0", "--rho", "1/2"], 1),
    (["eval", "--metric", "vuln", "--n", "5", "--rho", "1/2"], 2),
    (["eval", "--metric", "coverage", "--eta", "1", "--mode", "asym"], 2),
    (["eval", "--metric", "covered", "--nu", "1", "--mode", "asym"], 2),
    (["solve", "--metric", "vulnerability", "--target", "0.9", "--r", "30", "--l", "1000"], 3),
    (["solve", "--metric", "conn", "--target", "0.9", "--r", "1000", "--l", "1000"], 2),
    (["frobnicate"], 1),
])
def test_exit_codes_and_no_partial_output(capsys, argv, code):
    got, out, err = run_cli(capsys, *argv)
    assert got == code
    assert out == ""
    assert err.startswith("manetq")


def test_infeasible_reports_peak(capsys):
    _, _, err = run_cli(capsys, "solve", "--metric", "vulnerability", "--target", "0.9", "--r", "30", "--l", "1000")
    assert "0.1619" in err


def test_solve(capsys):
    code, out, _ = run_cli(capsys, "solve", "--metric", "connectedness", "--target", "0.9", "--r", "30", "--l", "1000")
    assert code == 0 and records(out)[0]["n_min"] == 261


def test_table_defaults(capsys):
    code, out, _ = run_cli(capsys, "table")
    rows = records(out)
    assert len(rows) == 20
    ns = [r["n_min"] for r in rows]
    assert ns == [261, 906, 39, 116, 77, 231, 102, 304, 173, 650,
                  349, 1167, 77, 231, 154, 461, 209, 627, 226, 804]


def test_table_single_column(capsys):
    _, out, _ = run_cli(capsys, "table", "--r", "30", "--targets", "0.9")
    assert [r["n_min"] for r in records(out)] == [261, 39, 77, 102, 173]


def test_table_long_road(capsys):
    _, out, _ = run_cli(capsys, "table", "--l", "2463", "--r", "30", "--targets", "0.9")
    rows = records(out)
    assert len(rows) == 5
    # node counts grow at least linearly with length at fixed range
    assert all(r["n_min"] >= 2.4 * base for r, base in zip(rows, (261, 39, 77, 102, 173)))


def test_bounds(capsys):
    _, out, _ = run_cli(capsys, "bounds", "--n", "2", "--rho", "1/4", "--k", "0")
    rec = records(out)[0]
    assert rec["lower"] == "0/1" and rec["upper"] == "15/16" and rec["provenance"] == "bounds"


def test_rationals_round_trip(capsys):
    _, out, _ = run_cli(capsys, "eval", "--metric", "reach", "--n", "9", "--rho", "3/37")
    rec = records(out)[0]
    q = parse_rational(rec["value"])
    assert f"{q.numerator}/{q.denominator}" == rec["value"]
    assert float(rec["value_decimal"]) == pytest.approx(float(q), rel=1e-11)


def test_sweep_rows(capsys):
    _, out, _ = run_cli(capsys, "sweep", "--metric", "conn", "--n-grid", "16:4096:2",
                        "--x-axis", "eta", "--x-grid", "-2:4:1", "--compare-asym")
    rows = records(out)
    assert len(rows) == 9 * 7
    assert all(r["abs_error"] >= 0 for r in rows)
    for eta in (0.0, 1.0, 2.0, 3.0, 4.0):
        errs = [r["abs_error"] for r in rows if r["x"] == eta]
        assert all(a > b for a, b in zip(errs, errs[1:]))
    _, out, _ = run_cli(capsys, "sweep", "--metric", "conn", "--n-grid", "2", "--x-grid", "1.2")
    assert records(out)[0]["exact"] == pytest.approx(0.2, abs=1e-15)


def test_sweep_coverage_limit(capsys):
    _, out, _ = run_cli(capsys, "sweep", "--metric", "coverage", "--n-grid", "10,100,1000", "--x-grid", "1")
    vals = [r["exact"] for r in records(out)]
    errs = [abs(v - (1 - math.exp(-2))) for v in vals]
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-3


def test_csv_matches_json(capsys):
    argv = ["sweep", "--metric", "vuln", "--n-grid", "10,40", "--x-grid", "0.5,1.5", "--compare-asym"]
    _, js, _ = run_cli(capsys, *argv)
    _, cs, _ = run_cli(capsys, "--format", "csv", *argv)
    rows = list(csv.DictReader(io.StringIO(cs)))
    for j, c in zip(records(js), rows):
        for key, val in j.items():
            if isinstance(val, float):
                assert float(c[key]) == val
            else:
                assert c[key] == str(val)


def test_simulate(capsys, monkeypatch):
    argv = ["simulate", "--n", "2", "--rho", "3/5", "--trials", "100000", "--seed", "42"]
    monkeypatch.setenv("MANETQ_THREADS", "1")
    _, a, _ = run_cli(capsys, *argv)
    monkeypatch.setenv("MANETQ_THREADS", "4")
    _, b, _ = run_cli(capsys, *argv)
    assert a == b
    rec = {r["metric"]: r for r in records(a)}
    conn = rec["connectedness"]
    assert conn["seed"] == 42 and conn["trials"] == 100000
    assert abs(conn["mean"] - 0.2) <= 4 * conn["stderr"]


def test_simulate_disconnected(capsys):
    _, out, _ = run_cli(capsys, "simulate", "--n", "2", "--rho", "1/4", "--boundary", "disconnected",
                        "--trials", "100000", "--seed", "1")
    conn = {r["metric"]: r for r in records(out)}["connectedness"]
    assert abs(conn["mean"] - 7 / 16) <= 4 * conn["stderr"]
