"""Acceptance criteria: one printed PASS/FAIL line per criterion, exact comparisons throughout."""

from __future__ import annotations

import math
import time
from fractions import Fraction
from itertools import permutations

import pytest

from framedvertex.curve import Framing, build_chart, involution_series, xi_hat
from framedvertex.cutjoin import PhiSource, assemble_C, check_cutjoin, check_symmetrized_cutjoin
from framedvertex.exactalg import RatFnA, polynomial
from framedvertex.hodge import correlator_violations, oracle_genus0, top_degree
from framedvertex.recursion import (
    OddFormRecursion,
    RecursionPlan,
    ResidueFormRecursion,
    chart_for,
    cross_check,
    run_plan,
)

A = RatFnA.variable()
PLAN = RecursionPlan(2, 3, 6, 2)
SPECIALIZATIONS = [Fraction(1), Fraction(2), Fraction(3), Fraction(-1, 2)]


@pytest.fixture(scope="module")
def timed_run():
    start = time.perf_counter()
    result = run_plan(Framing.symbol(), PLAN)
    return result, time.perf_counter() - start


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, failures: list[str], elapsed: float, budget: float | None = None):
        if budget is not None and elapsed >= budget:
            failures = failures + [f"runtime {elapsed:.1f} s over {budget:.0f} s"]
        status = "PASS" if not failures else "FAIL"
        detail = "" if not failures else " - " + "; ".join(failures)
        with capsys.disabled():
            print(f"\n[acceptance] criterion {number} ({title}): {status} in {elapsed:.2f} s{detail}")
        assert not failures, "; ".join(failures)
    return emit


def test_criterion_1_curve_series(report):
    start = time.perf_counter()
    sym = Framing.symbol()
    chart = build_chart(sym, 8, 10)
    failures = []
    P = involution_series(chart).P
    printed_P = [RatFnA(-1), -2 * (A * A - 1) / (3 * A), -4 * (A * A - 1) ** 2 / (9 * A * A),
                 -2 * (A + 1) ** 3 * (22 * A**3 - 57 * A**2 + 57 * A - 22) / (135 * A**3)]
    for k, want in enumerate(printed_P, start=1):
        if P.coefficient(k) != want:
            failures.append(f"P(z) z^{k}")
    printed_t = [RatFnA(1), (1 - 1 / A) / 3, (1 + 1 / A + 1 / A**2) / 12,
                 (2 + 3 / A - 3 / A**2 - 2 / A**3) / 135, (1 + 2 / A + 3 / A**2 + 2 / A**3 + 1 / A**4) / 864]
    for k, want in zip(range(-1, 4), printed_t):
        if chart.t_v.coefficient(k) != want:
            failures.append(f"t(vhat) vhat^{k}")
    printed_s = [RatFnA(1), -(1 - 1 / A) / 3, (1 - 11 / A + 1 / A**2) / 36,
                 (1 + 24 / A - 24 / A**2 - 1 / A**3) / 270, (1 - 22 / A + 267 / A**2 - 22 / A**3 + 1 / A**4) / 4320]
    for k, want in zip(range(1, 6), printed_s):
        if chart.s_v.coefficient(k) != want:
            failures.append(f"1/t(vhat) vhat^{k}")
    t = polynomial("t", [0, 1])
    if xi_hat(0, sym) != (t - 1).scale(1 / (A + 1)):
        failures.append("xi_hat_0 display")
    printed_xi1 = (t * (t - 1) * (t.scale(A) + 1)).scale(1 / (A + 1))
    if xi_hat(1, sym) != printed_xi1:
        failures.append("xi_hat_1 display t(t-1)(at+1)/(a+1) differs from D_t xi_hat_0 = t(t-1)(at+1)/(a+1)^2")
    report(1, "curve series vs printed displays", failures, time.perf_counter() - start, 5)


def test_criterion_2_lagrange_inversion(report):
    start = time.perf_counter()
    chart = build_chart(Framing.symbol(), 31, 4)
    failures = []
    for n in range(1, 31):
        want = RatFnA(1)
        for j in range(n - 1):
            want = want * (n * A + j)
        want = want / math.factorial(n)
        if chart.u_x.coefficient(n) != want:
            failures.append(f"u_{n}")
    report(2, "Lagrange inversion of u(x), n <= 30", failures, time.perf_counter() - start, 10)


def test_criterion_3_recursion_anchors(report):
    start = time.perf_counter()
    r = run_plan(Framing.symbol(), RecursionPlan(1, 4, 3))
    corr, amps = r.correlators, r.amplitudes
    failures = []
    checks = [
        ("<tau_0^3 T_0>", corr[0, (0, 0, 0)], RatFnA(1)),
        ("<tau_1 T_1>", corr[1, (1,)], -A * (A + 1) / 24),
        ("<tau_0 T_1>", corr[1, (0,)], (A * A + A + 1) / 24),
        ("W_1,(1)", amps[1, (1,)], RatFnA(Fraction(1, 24))),
        ("W_0,(1)", amps[0, (1,)], RatFnA(-1)),
        ("W_0,(2)", amps[0, (2,)], -(2 * A + 1) / 4),
        ("W_0,(1,1)", amps[0, (1, 1)], A * (A + 1) / 4),
        ("W_0,(1,1,1)", amps[0, (1, 1, 1)], -(A * (A + 1)) ** 2 / 6),
    ]
    failures += [name for name, got, want in checks if got != want]
    for (g, b), v in corr.entries.items():
        if g == 0 and len(b) == 4 and v != oracle_genus0(b):
            failures.append(f"<{b} T_0>")
    report(3, "recursion anchors at genus <= 1", failures, time.perf_counter() - start, 60)


def test_criterion_4_cut_and_join(report, timed_run):
    result, run_time = timed_run
    start = time.perf_counter()
    C = assemble_C(result.amplitudes, 2, 6)
    res = check_cutjoin(C, 2, 6)
    failures = [f"p-level {r['key']}" for r in res.records()]
    src = PhiSource(result.amplitudes, result.engine.chart, 6)
    for g, n in [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)]:
        if not check_symmetrized_cutjoin(g, n, 6, result.amplitudes, result.engine.chart, src).is_zero():
            failures.append(f"symmetrized ({g},{n})")
    report(4, "cut-and-join, g <= 2, |mu| <= 6", failures, time.perf_counter() - start + run_time, 600)


def test_criterion_5_engine_equivalence(report):
    start = time.perf_counter()
    sym = Framing.symbol()
    chart = chart_for(sym, PLAN)
    engines = (OddFormRecursion(chart, PLAN), ResidueFormRecursion(chart, PLAN))
    failures = []
    checked = 0
    for g, n in PLAN.correlator_cells():
        rep = cross_check(g, n, 6, engines=engines)
        checked += rep.checked
        failures += [f"W_{m['g']},{tuple(m['mu'])}" for m in rep.mismatches]
    if checked == 0:
        failures.append("nothing compared")
    report(5, f"residue form vs odd form, {checked} amplitudes", failures, time.perf_counter() - start, 600)


def test_criterion_6_structural_invariants(report, timed_run):
    result, run_time = timed_run
    start = time.perf_counter()
    corr = result.correlators
    failures = list(correlator_violations(corr))
    for (g, b), v in corr.entries.items():
        for perm in set(permutations(b)):
            if corr.get(g, perm) != v:
                failures.append(f"asymmetric g={g} b={b}")
        if sum(b) > top_degree(g, len(b)) and v:
            failures.append(f"dimension g={g} b={b}")
    report(6, f"invariants on {len(corr.entries)} correlators", failures, time.perf_counter() - start + run_time)


def test_criterion_7_precision_stability(report, timed_run):
    result, _ = timed_run
    start = time.perf_counter()
    wider = run_plan(Framing.symbol(), RecursionPlan(PLAN.g_max, PLAN.n_max, PLAN.degree, PLAN.slack + 2))
    failures = []
    if wider.correlators.entries != result.correlators.entries:
        failures.append("correlators changed")
    if wider.amplitudes.entries != result.amplitudes.entries:
        failures.append("amplitudes changed")
    report(7, "slack + 2 reproduces every coefficient", failures, time.perf_counter() - start)


def test_criterion_8_specialization(report, timed_run):
    result, _ = timed_run
    start = time.perf_counter()
    sym = result.framing
    failures = []
    for q in SPECIALIZATIONS:
        direct = run_plan(Framing.rational(q), PLAN)
        for table, other in ((result.correlators, direct.correlators), (result.amplitudes, direct.amplitudes)):
            for key, v in table.entries.items():
                if sym.specialize(v, q) != other.entries.get(key):
                    failures.append(f"a={q} {key}")
    report(8, "symbolic tables at a in {1, 2, 3, -1/2}", failures, time.perf_counter() - start)
