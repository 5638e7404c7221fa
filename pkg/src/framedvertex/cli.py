"""Command line: ``framedvertex {curve,recurse,check}``.

Exit codes: 0 success, 1 usage or configuration error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .curve import Framing, build_chart, involution_series, xi_hat, xi_v_odd
from .cutjoin import PhiSource, assemble_C, check_cutjoin, check_symmetrized_cutjoin
from .exactalg import PolyA, RatFnA
from .exactalg.ratfn import to_json_value
from .exactalg.laurent import PrecisionError
from .hodge import (
    correlator_violations,
    oracle_genus0,
    oracle_genus1,
    stable,
)
from .recursion import RecursionPlan, VerificationError, cross_check, run_plan
from .recursion.odd import OddFormRecursion
from .recursion.residue import ResidueFormRecursion
from .recursion.run import chart_for

SUITES = ("anchors", "cutjoin", "cross", "invariants")
THREADS_ENV = "FRAMEDVERTEX_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    framing: Framing
    g_max: int
    n_max: int
    degree: int
    slack: int
    suites: tuple[str, ...]
    fmt: str
    output: str | None
    threads: int

    @property
    def plan(self) -> RecursionPlan:
        return RecursionPlan(self.g_max, self.n_max, self.degree, self.slack)


def _framing(text: str) -> Framing:
    try:
        return Framing.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad framing {text!r}: {exc}") from exc


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def config_from_args(args) -> RunConfig:
    suites: tuple[str, ...] = ()
    if getattr(args, "suite", None):
        names = [s for chunk in args.suite for s in chunk.split(",") if s]
        unknown = [s for s in names if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
        suites = tuple(s for s in SUITES if s in names)
    elif args.command == "check":
        suites = SUITES
    g_max = getattr(args, "gmax", 2)
    n_max = getattr(args, "nmax", 3)
    degree = getattr(args, "degree", 6)
    slack = getattr(args, "slack", 2)
    if g_max < 0 or n_max < 1 or degree < 1:
        raise UsageError("need --gmax >= 0, --nmax >= 1, --degree >= 1")
    if slack < 2:
        raise UsageError("--slack must be at least 2")
    return RunConfig(_framing(args.a), g_max, n_max, degree, slack, suites, args.format, args.output, _threads())


# ---------------------------------------------------------------------------
# encoding


def encode(x) -> dict:
    """A field element as ascending ``num``/``den`` coefficient arrays in ``a``."""
    return to_json_value(x)


def _csv_pair(enc: dict) -> list[str]:
    return [" ".join(enc["num"]) or "0", " ".join(enc["den"])]


def _series_records(series, upto: int) -> list:
    return [{"exp": e, "coeff": encode(c)} for e, c in series.terms() if e <= upto]


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def cmd_curve(cfg: RunConfig, order: int) -> int:
    if order < 1:
        raise UsageError("--order must be at least 1")
    fr = cfg.framing
    chart = build_chart(fr, order + 3, order + 6)
    P = involution_series(chart).P
    series = {
        "u(x)": _series_records(chart.u_x, order),
        "y(x)": _series_records(chart.y_x, order),
        "t(x)": _series_records(chart.t_x, order),
        "P(z)": _series_records(P, order),
        "t(vhat)": _series_records(chart.t_v, order),
    }
    for b in range(0, order + 1):
        series[f"xi_hat_{b}(t)"] = _series_records(xi_hat(b, chart), 2 * b + 1)
    for b in range(0, order + 1):
        try:
            series[f"xi_odd_{b}(vhat)"] = _series_records(xi_v_odd(b, chart), order)
        except PrecisionError:
            break
    if cfg.fmt == "json":
        text = _dump_json({"framing": fr.label, "order": order, "xi_hat_-1": str(xi_hat(-1, chart)),
                           "series": series})
    else:
        rows = []
        for name, recs in series.items():
            for r in recs:
                rows.append([name, r["exp"], *_csv_pair(r["coeff"])])
        text = _csv_text(["series", "exponent", "num", "den"], rows)
    _emit(text, cfg.output)
    return 0


def cmd_recurse(cfg: RunConfig) -> int:
    result = run_plan(cfg.framing, cfg.plan)
    corr = result.correlators.to_records()
    amps = result.amplitudes.to_records()
    if cfg.fmt == "json":
        payload = {
            "framing": cfg.framing.label,
            "plan": {"gmax": cfg.g_max, "nmax": cfg.n_max, "degree": cfg.degree, "slack": cfg.slack},
            "correlators": corr,
            "amplitudes": amps,
        }
        text = _dump_json(payload)
    else:
        rows = [["correlator", r["g"], " ".join(map(str, r["b"])), " ".join(r["value"]) or "0", "1"] for r in corr]
        rows += [["amplitude", r["g"], " ".join(map(str, r["mu"])), *_csv_pair(r["W"])] for r in amps]
        text = _csv_text(["kind", "g", "key", "num", "den"], rows)
    _emit(text, cfg.output)
    return 0


# -- check suites -------------------------------------------------------------


def _specialize(framing: Framing, value: PolyA):
    return RatFnA(value) if framing.symbolic else value(framing.a)


def suite_anchors(cfg: RunConfig, result) -> dict:
    fr = cfg.framing
    corr, amps = result.correlators, result.amplitudes
    a = fr.a
    failures = []

    def expect(key, got, want):
        if got != want:
            failures.append({"key": key, "lhs": encode(got), "rhs": encode(want)})

    for (g, b), v in sorted(corr.entries.items()):
        if g == 0:
            expect({"g": 0, "b": list(b)}, v, fr.field(oracle_genus0(b)))
        elif g == 1:
            expect({"g": 1, "b": list(b)}, v, _specialize(fr, oracle_genus1(b)))
    fixed = [
        ((0, (1,)), fr.field(-1)),
        ((0, (2,)), -(2 * a + 1) / 4),
        ((0, (1, 1)), a * (a + 1) / 4),
        ((0, (1, 1, 1)), -(a * (a + 1)) ** 2 / 6),
        ((1, (1,)), fr.field(Fraction(1, 24))),
    ]
    for (g, mu), want in fixed:
        if g <= cfg.g_max and sum(mu) <= cfg.degree:
            expect({"g": g, "mu": list(mu)}, amps[g, mu], want)
    return {"suite": "anchors", "pass": not failures, "failures": failures}


def suite_invariants(cfg: RunConfig, result) -> dict:
    failures = [{"key": p, "lhs": None, "rhs": None} for p in correlator_violations(result.correlators)]
    return {"suite": "invariants", "pass": not failures, "failures": failures}


def suite_cutjoin(cfg: RunConfig, result) -> dict:
    if not cfg.framing.symbolic:
        return {"suite": "cutjoin", "pass": False,
                "failures": [{"key": "framing", "lhs": cfg.framing.label, "rhs": "symbolic required for d/da"}]}
    amps = result.amplitudes
    C = assemble_C(amps, cfg.g_max, cfg.degree)
    res = check_cutjoin(C, cfg.g_max, cfg.degree)
    failures = res.records()
    src = PhiSource(amps, result.engine.chart, cfg.degree)
    for g in range(cfg.g_max + 1):
        for n in range(1, min(cfg.n_max + 1, cfg.degree - 1) + 1):
            if not stable(g, n):
                continue
            out = check_symmetrized_cutjoin(g, n, cfg.degree, amps, result.engine.chart, src)
            for k, c in sorted(out.terms.items()):
                failures.append({"key": {"g": g, "n": n, "x": list(k)}, "lhs": encode(c), "rhs": encode(0)})
    return {"suite": "cutjoin", "pass": not failures, "failures": failures}


def suite_cross(cfg: RunConfig, result) -> dict:
    plan = cfg.plan
    chart = chart_for(cfg.framing, plan)
    engines = (OddFormRecursion(chart, plan), ResidueFormRecursion(chart, plan))
    failures = []
    for g, n in plan.correlator_cells():
        rep = cross_check(g, n, cfg.degree, engines=engines)
        for m in rep.mismatches:
            failures.append({"key": {"g": m["g"], "mu": m["mu"]}, "lhs": encode(m["odd"]), "rhs": encode(m["residue"])})
    return {"suite": "cross", "pass": not failures, "failures": failures}


SUITE_FUNCS = {"anchors": suite_anchors, "cutjoin": suite_cutjoin, "cross": suite_cross, "invariants": suite_invariants}


def _run_suite(name: str, cfg: RunConfig, result) -> dict:
    try:
        return SUITE_FUNCS[name](cfg, result)
    except VerificationError as exc:
        return {"suite": name, "pass": False, "failures": [{"key": "verification", "lhs": str(exc), "rhs": None}]}


def cmd_check(cfg: RunConfig) -> int:
    try:
        result = run_plan(cfg.framing, cfg.plan)
    except VerificationError as exc:
        reports = [{"suite": s, "pass": False, "failures": [{"key": "recursion", "lhs": str(exc), "rhs": None}]}
                   for s in cfg.suites]
    else:
        # suites only read the finished tables (the cross suite builds its own engines)
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [pool.submit(_run_suite, name, cfg, result) for name in cfg.suites]
            reports = [f.result() for f in futures]
    if cfg.fmt == "json":
        text = _dump_json(reports)
    else:
        rows = []
        for r in reports:
            if not r["failures"]:
                rows.append([r["suite"], "pass", "", "", ""])
            for f in r["failures"]:
                rows.append([r["suite"], "fail", json.dumps(f["key"]), json.dumps(f["lhs"]), json.dumps(f["rhs"])])
        text = _csv_text(["suite", "status", "key", "lhs", "rhs"], rows)
    _emit(text, cfg.output)
    return 0 if all(r["pass"] for r in reports) else 2


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="framedvertex", description="Exact recursion and cut-and-join checks for the framed vertex curve.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, plan: bool):
        p.add_argument("--a", default="symbolic", help="framing: 'symbolic' or a rational p/q (not 0 or -1)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="output file (default: stdout)")
        if plan:
            p.add_argument("--gmax", type=int, default=2)
            p.add_argument("--nmax", type=int, default=3)
            p.add_argument("--degree", type=int, default=6)
            p.add_argument("--slack", type=int, default=2)

    p_curve = sub.add_parser("curve", help="emit curve series")
    common(p_curve, plan=False)
    p_curve.add_argument("--order", type=int, default=5, help="highest exponent emitted")

    p_rec = sub.add_parser("recurse", help="run the recursion and write tables")
    common(p_rec, plan=True)

    p_chk = sub.add_parser("check", help="run verification suites")
    common(p_chk, plan=True)
    p_chk.add_argument("--suite", action="append", help=f"suite(s) among {', '.join(SUITES)}; repeat or comma-separate")
    return parser


def _glue_negative_framing(argv: list[str]) -> list[str]:
    """argparse takes ``--a -1/2`` for two options; rewrite it as ``--a=-1/2``."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == "--a" and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"--a={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_framing(sys.argv[1:] if argv is None else list(argv)))
    try:
        cfg = config_from_args(args)
        if args.command == "curve":
            return cmd_curve(cfg, args.order)
        if args.command == "recurse":
            return cmd_recurse(cfg)
        return cmd_check(cfg)
    except UsageError as exc:
        print(f"framedvertex: error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"framedvertex: verification failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
