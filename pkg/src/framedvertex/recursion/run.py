"""Running a plan: correlator and amplitude tables, invariants and the engine cross-check."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..curve import CurveChart, Framing, build_chart
from ..hodge import (
    AmplitudeTable,
    CorrelatorTable,
    Partition,
    amplitude_from_correlators,
    correlator_violations,
    exceptional_amplitude,
    partitions,
    stable,
)
from .engine import MonomialRecursion, VerificationError
from .odd import OddFormRecursion
from .plan import RecursionPlan
from .residue import ResidueFormRecursion

ENGINES = {"odd": OddFormRecursion, "residue": ResidueFormRecursion}


def chart_for(framing: Framing, plan: RecursionPlan) -> CurveChart:
    return build_chart(framing, plan.chart_order_x_for(framing), plan.chart_order_v)


def make_engine(kind: str, framing: Framing, plan: RecursionPlan, chart: CurveChart | None = None) -> MonomialRecursion:
    if kind not in ENGINES:
        raise ValueError(f"unknown engine {kind!r}; choose from {sorted(ENGINES)}")
    return ENGINES[kind](chart or chart_for(framing, plan), plan)


def recurse_cell(engine: MonomialRecursion, g: int, n: int, table: CorrelatorTable) -> dict:
    """Correlators of one cell, stored into ``table`` after the invariants are re-asserted."""
    cell = engine.correlators(g, n)
    probe = CorrelatorTable(table.framing, dict(cell))
    problems = correlator_violations(probe)
    if problems:
        raise VerificationError(f"{engine.name} ({g},{n}): " + "; ".join(problems))
    table.entries.update(cell)
    return cell


def recurse_odd_form(g: int, n: int, plan: RecursionPlan, chart: CurveChart,
                     table: CorrelatorTable | None = None, engine: OddFormRecursion | None = None) -> dict:
    """Correlators ``<prod tau_b T_g>`` of cell ``(g, n)`` from the odd-part form."""
    engine = engine or OddFormRecursion(chart, plan)
    table = table if table is not None else CorrelatorTable(chart.framing)
    return recurse_cell(engine, g, n, table)


def recurse_residue_form(g: int, n: int, plan: RecursionPlan, chart: CurveChart, degree: int | None = None,
                         engine: ResidueFormRecursion | None = None) -> dict:
    """Monomial amplitudes ``z_mu W_{g,mu}`` of length ``n`` and ``|mu| <= degree`` from the residue form."""
    engine = engine or ResidueFormRecursion(chart, plan)
    degree = plan.degree if degree is None else degree
    out = {}
    for d in range(n, degree + 1):
        for mu in partitions(d):
            if mu.length == n:
                out[mu] = engine.monomial(g, mu.parts)
    return out


def amplitude(engine: MonomialRecursion, g: int, mu: Partition):
    """``W_{g,mu}``, directly from the monomial read-out of the engine."""
    if not stable(g, mu.length):
        return exceptional_amplitude(g, mu, engine.framing)
    return engine.monomial(g, mu.parts) / engine.framing.field(mu.z)


@dataclass
class RunResult:
    framing: Framing
    plan: RecursionPlan
    correlators: CorrelatorTable
    amplitudes: AmplitudeTable
    engine: MonomialRecursion = field(repr=False)


def run_plan(framing: Framing, plan: RecursionPlan, kind: str = "odd", chart: CurveChart | None = None) -> RunResult:
    """Correlators for every cell of the plan and amplitudes for every ``|mu| <= degree``.

    Amplitudes in cells that also have correlators are recomputed from them and
    must agree with the direct monomial read-out.
    """
    engine = make_engine(kind, framing, plan, chart)
    corr = CorrelatorTable(framing)
    for g, n in plan.correlator_cells():
        recurse_cell(engine, g, n, corr)
    amps = AmplitudeTable(framing)
    for g in range(plan.g_max + 1):
        for d in range(1, plan.degree + 1):
            for mu in partitions(d):
                w = amplitude(engine, g, mu)
                if stable(g, mu.length) and mu.length <= plan.n_max:
                    w2 = amplitude_from_correlators(g, mu, corr)
                    if w != w2:
                        raise VerificationError(f"W_{g},{mu}: monomial read-out {w} != correlator sum {w2}")
                amps[g, mu] = w
    return RunResult(framing, plan, corr, amps, engine)


@dataclass
class CrossCheckReport:
    checked: int
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def cross_check(g: int, n: int, D: int, framing: Framing | None = None,
                engines: tuple[OddFormRecursion, ResidueFormRecursion] | None = None) -> CrossCheckReport:
    """Odd-form correlators, turned into amplitudes, against residue-form monomials, exactly."""
    if not stable(g, n):
        raise ValueError(f"({g}, {n}) is not stable")
    if engines is None:
        framing = framing or Framing.symbol()
        plan = RecursionPlan(g_max=g, n_max=n, degree=max(D, n))
        chart = chart_for(framing, plan)
        engines = (OddFormRecursion(chart, plan), ResidueFormRecursion(chart, plan))
    odd, res = engines
    table = CorrelatorTable(odd.framing, dict(odd.correlators(g, n)))
    mismatches = []
    checked = 0
    for mu, zw in recurse_residue_form(g, n, res.plan, res.chart, D, engine=res).items():
        w_odd = amplitude_from_correlators(g, mu, table)
        w_res = zw / res.framing.field(mu.z)
        checked += 1
        if w_odd != w_res:
            mismatches.append({"g": g, "mu": list(mu.parts), "odd": w_odd, "residue": w_res})
    return CrossCheckReport(checked, mismatches)
