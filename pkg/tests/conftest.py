from __future__ import annotations

import pytest

from framedvertex.curve import Framing, build_chart
from framedvertex.recursion import RecursionPlan, run_plan


@pytest.fixture(scope="session")
def sym() -> Framing:
    return Framing.symbol()


@pytest.fixture(scope="session")
def a(sym):
    return sym.a


@pytest.fixture(scope="session")
def chart(sym):
    return build_chart(sym, 16, 16)


@pytest.fixture(scope="session")
def default_plan() -> RecursionPlan:
    return RecursionPlan()


@pytest.fixture(scope="session")
def full_run(sym, default_plan):
    """The symbolic default plan, computed once per session."""
    return run_plan(sym, default_plan)
