"""Topological recursion for the framed one-legged vertex curve, in two independent forms."""

from .engine import MonomialRecursion, VerificationError
from .odd import OddFormRecursion, solve_against_xi_basis
from .plan import RecursionPlan
from .residue import ResidueFormRecursion
from .run import (
    CrossCheckReport,
    RunResult,
    amplitude,
    chart_for,
    cross_check,
    make_engine,
    recurse_odd_form,
    recurse_residue_form,
    run_plan,
)

__all__ = [
    "CrossCheckReport",
    "MonomialRecursion",
    "OddFormRecursion",
    "RecursionPlan",
    "ResidueFormRecursion",
    "RunResult",
    "VerificationError",
    "amplitude",
    "chart_for",
    "cross_check",
    "make_engine",
    "recurse_odd_form",
    "recurse_residue_form",
    "run_plan",
    "solve_against_xi_basis",
]
