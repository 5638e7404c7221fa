from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from framedvertex import cli
from framedvertex.exactalg import RatFnA
from framedvertex.recursion import VerificationError

A = RatFnA.variable()


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def decode(enc) -> RatFnA:
    return RatFnA.from_json(enc)


def amplitude(payload, g, mu):
    for r in payload["amplitudes"]:
        if r["g"] == g and r["mu"] == mu:
            return decode(r["W"])
    raise KeyError((g, mu))


# -- exit codes -----------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["curve", "--a", "0"],
    ["curve", "--a", "-1"],
    ["curve", "--a", "two"],
    ["curve", "--order", "0"],
    ["recurse", "--slack", "1"],
    ["check", "--suite", "nope"],
    ["curve", "--bogus"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    assert exc.value.code == 1


def test_bad_thread_count(capsys, monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "zero")
    code, _, err = run(capsys, "check", "--suite", "anchors", "--gmax", "0", "--nmax", "3", "--degree", "3")
    assert code == 1 and cli.THREADS_ENV in err


def test_verification_failure_exits_2(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise VerificationError("residual")
    monkeypatch.setattr(cli, "run_plan", broken)
    code, _, err = run(capsys, "recurse", "--gmax", "0", "--nmax", "3", "--degree", "3")
    assert code == 2 and "residual" in err
    code, out, _ = run(capsys, "check", "--suite", "anchors")
    assert code == 2
    report = json.loads(out)
    assert report[0]["pass"] is False and report[0]["failures"]


def test_cutjoin_suite_needs_symbolic_framing(capsys):
    code, out, _ = run(capsys, "check", "--suite", "cutjoin", "--a", "2", "--gmax", "0", "--nmax", "3", "--degree", "3")
    assert code == 2
    assert json.loads(out)[0]["failures"][0]["key"] == "framing"


# -- curve ---------------------------------------------------------------------------


def test_curve_involution(capsys):
    code, out, _ = run(capsys, "curve", "--order", "5", "--a", "symbolic")
    assert code == 0
    P = {r["exp"]: decode(r["coeff"]) for r in json.loads(out)["series"]["P(z)"]}
    assert P[1] == -1
    assert P[2] == -2 * (A * A - 1) / (3 * A)
    assert P[3] == -4 * (A * A - 1) ** 2 / (9 * A * A)
    assert P[4] == -2 * (A + 1) ** 3 * (22 * A**3 - 57 * A**2 + 57 * A - 22) / (135 * A**3)


def test_curve_specialized(capsys):
    code, out, _ = run(capsys, "curve", "--a", "1", "--order", "3")
    assert code == 0
    u = {r["exp"]: decode(r["coeff"]) for r in json.loads(out)["series"]["u(x)"]}
    assert [u[k] for k in (1, 2, 3)] == [1, 1, 2]


# -- recurse ---------------------------------------------------------------------------


def test_recurse_genus_zero(capsys):
    code, out, _ = run(capsys, "recurse", "--gmax", "0", "--nmax", "3", "--degree", "3")
    assert code == 0
    payload = json.loads(out)
    assert amplitude(payload, 0, [1, 1, 1]) == -(A * (A + 1)) ** 2 / 6
    assert {"g": 0, "b": [0, 0, 0], "value": ["1"]} in payload["correlators"]


@pytest.mark.parametrize("framing", ["symbolic", "1"])
def test_recurse_genus_one(capsys, framing):
    code, out, _ = run(capsys, "recurse", "--gmax", "1", "--nmax", "1", "--degree", "2", "--a", framing)
    assert code == 0
    assert amplitude(json.loads(out), 1, [1]) == Fraction(1, 24)


def test_negative_framing_argument(capsys):
    code, out, _ = run(capsys, "recurse", "--a", "-1/2", "--gmax", "1", "--nmax", "1", "--degree", "2")
    assert code == 0
    assert amplitude(json.loads(out), 0, [2]) == 0  # c_2 vanishes at a = -1/2
    assert run(capsys, "curve", "--a", "-1", "--order", "2")[0] == 1


def test_recurse_specialized_matches_symbolic(capsys):
    _, sym_out, _ = run(capsys, "recurse", "--gmax", "1", "--nmax", "2", "--degree", "3")
    _, one_out, _ = run(capsys, "recurse", "--gmax", "1", "--nmax", "2", "--degree", "3", "--a", "1")
    sym, one = json.loads(sym_out), json.loads(one_out)
    for r_s, r_1 in zip(sym["amplitudes"], one["amplitudes"]):
        assert (r_s["g"], r_s["mu"]) == (r_1["g"], r_1["mu"])
        assert decode(r_s["W"]).evaluate(Fraction(1)) == decode(r_1["W"])


def test_csv_matches_json(capsys):
    args = ["recurse", "--gmax", "1", "--nmax", "2", "--degree", "3"]
    _, js, _ = run(capsys, *args)
    _, cs, _ = run(capsys, *args, "--format", "csv")
    payload = json.loads(js)
    rows = list(csv.DictReader(io.StringIO(cs)))
    corr_rows = [r for r in rows if r["kind"] == "correlator"]
    amp_rows = [r for r in rows if r["kind"] == "amplitude"]
    assert len(corr_rows) == len(payload["correlators"])
    assert len(amp_rows) == len(payload["amplitudes"])
    for row, rec in zip(corr_rows, payload["correlators"]):
        assert [int(x) for x in row["key"].split()] == rec["b"]
        assert RatFnA.from_json({"num": row["num"].split(), "den": ["1"]}) == decode({"num": rec["value"], "den": ["1"]})
    for row, rec in zip(amp_rows, payload["amplitudes"]):
        assert [int(x) for x in row["key"].split()] == rec["mu"]
        assert RatFnA.from_json({"num": row["num"].split(), "den": row["den"].split()}) == decode(rec["W"])


def test_output_is_deterministic(tmp_path, capsys, monkeypatch):
    args = ["check", "--gmax", "1", "--nmax", "2", "--degree", "4", "--suite", "anchors,cross,invariants"]
    first, second, threaded = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    assert cli.main(args + ["--output", str(first)]) == 0
    assert cli.main(args + ["--output", str(second)]) == 0
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    assert cli.main(args + ["--output", str(threaded)]) == 0
    assert first.read_bytes() == second.read_bytes() == threaded.read_bytes()
    assert capsys.readouterr().out == ""


# -- check -----------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["--suite", "anchors", "--gmax", "1"],
    ["--suite", "cutjoin", "--gmax", "1", "--degree", "4"],
    ["--suite", "cross", "--gmax", "2", "--nmax", "2", "--degree", "4"],
    ["--suite", "invariants", "--suite", "anchors", "--gmax", "1", "--degree", "4"],
])
def test_check_suites_pass(capsys, argv):
    code, out, _ = run(capsys, "check", *argv)
    report = json.loads(out)
    assert code == 0
    assert all(r["pass"] and r["failures"] == [] for r in report)
    assert [r["suite"] for r in report] == [s for s in cli.SUITES if s in " ".join(argv)]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "framedvertex", "curve", "--a", "1", "--order", "2", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "series,exponent,num,den"
    assert "u(x),2,1,1" in proc.stdout
