"""Demand-driven memo shared by both recursion forms.

Both engines produce, for a stable ``(g, n)`` and fixed tail exponents
``m_2..m_n``, the one-point data ``Y_b`` defined by

    [x_2^{m_2} ... x_n^{m_n}] W_g / prod(dx_i/x_i) = s_{g,n} sum_b Y_b phi_{b+1}(x_1),

with ``s_{g,n} = (-1)^(g+n) (a(a+1))^(n-1)``.  Tails are stored sorted.  Lower
cells are requested on demand, so only the closure of what is asked for is built.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import product

from ..curve import CurveChart, c_coefficient
from ..exactalg import PrecisionError
from ..hodge import (
    correlators_from_monomials,
    monomial_sign,
    readout_rows,
    solve_basis_axis,
    stable,
    top_degree,
)
from .plan import RecursionPlan


class VerificationError(ArithmeticError):
    """An internal consistency check of the recursion failed."""


def sub_multisets(tails: tuple[int, ...]):
    """Yield ``(multiplicity, A, B)`` over ordered splits of a sorted multiset, grouped by content."""
    counts = Counter(tails)
    values = sorted(counts)
    for ks in product(*(range(counts[v] + 1) for v in values)):
        A = tuple(v for v, k in zip(values, ks) for _ in range(k))
        B = tuple(v for v, k in zip(values, ks) for _ in range(counts[v] - k))
        mult = math.prod(math.comb(counts[v], k) for v, k in zip(values, ks))
        yield mult, A, B


def splittings(g: int, tails: tuple[int, ...]):
    """``(mult, g1, A, g2, B)`` for every ordered split with no ``(0,1)`` factor."""
    for mult, A, B in sub_multisets(tails):
        for g1 in range(g + 1):
            g2 = g - g1
            if (g1 == 0 and not A) or (g2 == 0 and not B):
                continue
            yield mult, g1, A, g2, B


def is_exceptional(g: int, n: int) -> bool:
    return g == 0 and n == 2


class MonomialRecursion:
    """Base class: memo, two-point expansion, splitting enumeration and read-out."""

    name = "base"

    def __init__(self, chart: CurveChart, plan: RecursionPlan):
        self.chart = chart
        self.plan = plan
        self.framing = chart.framing
        self.a = chart.a
        self._memo: dict = {}
        self._pairs: dict = {}
        self._signs: dict = {}

    # -- bookkeeping -------------------------------------------------------

    def sign(self, g: int, n: int):
        key = (g, n)
        if key not in self._signs:
            self._signs[key] = monomial_sign(g, n, self.a)
        return self._signs[key]

    def check_tail(self, tails) -> None:
        if tails and max(tails) >= self.chart.order_x - 1:
            raise VerificationError(f"tail exponent {max(tails)} beyond the x-chart order {self.chart.order_x}")

    def one_point(self, g: int, n: int, tails) -> list:
        """``Y_b`` for ``b = 0..3g-3+n`` (memoized)."""
        if not stable(g, n):
            raise ValueError(f"({g}, {n}) is not stable")
        tails = tuple(sorted(tails))
        if len(tails) != n - 1:
            raise ValueError(f"need {n - 1} tail exponents, got {tails}")
        key = (g, n, tails)
        if key not in self._memo:
            self.check_tail(tails)
            try:
                self._memo[key] = self._compute(g, n, tails)
            except PrecisionError as exc:
                raise VerificationError(f"{self.name} ({g},{n}) tails {tails}: chart too short: {exc}") from exc
        return self._memo[key]

    def _compute(self, g: int, n: int, tails: tuple[int, ...]) -> list:
        raise NotImplementedError

    def genus_pair(self, g: int, n: int, tails) -> list[list]:
        """``M[b][c]`` with ``Y_b(g, n, (m,) + tails) = sum_c M[b][c] c_m m^(c+1)``."""
        tails = tuple(sorted(tails))
        key = (g, n, tails)
        if key not in self._pairs:
            top = top_degree(g, n)
            cols = {m: self.one_point(g, n, (m,) + tails) for m in readout_rows(top + 2, self.framing)}
            M = []
            for b in range(top + 1):
                M.append(solve_basis_axis({m: col[b] for m, col in cols.items()}, top + 1, self.framing))
            self._pairs[key] = M
        return self._pairs[key]

    # -- read-out ----------------------------------------------------------

    def monomial(self, g: int, exponents) -> object:
        """Coefficient of ``prod x_i^{m_i}`` in ``W_g / prod(dx_i/x_i)``, i.e. ``z_mu W_{g,mu}``."""
        exponents = tuple(exponents)
        n = len(exponents)
        m1, tails = exponents[0], exponents[1:]
        Y = self.one_point(g, n, tails)
        c = c_coefficient(m1, self.a)
        total = self.a * 0
        for b, y in enumerate(Y):
            if y:
                total = total + y * m1 ** (b + 1)
        return self.sign(g, n) * c * total

    def correlators(self, g: int, n: int) -> dict:
        """Correlators of cell ``(g, n)`` by Vandermonde inversion, with one extra row per axis."""
        top = top_degree(g, n)
        grid = readout_rows(top + 2, self.framing)
        data = {}
        for exps in product(grid, repeat=n):
            data[exps] = self.monomial(g, exps)
        try:
            return correlators_from_monomials(g, n, data, self.framing)
        except ArithmeticError as exc:
            raise VerificationError(f"{self.name}: cell ({g},{n}): {exc}") from exc
