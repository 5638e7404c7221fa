"""Truncation planning for the recursion."""

from __future__ import annotations

from dataclasses import dataclass

from ..curve import Framing
from ..hodge import readout_rows, stable, top_degree


@dataclass(frozen=True)
class RecursionPlan:
    """Targets and truncation orders for one run.

    Correlators are produced for stable ``(g, n)`` with ``g <= g_max`` and
    ``n <= n_max``; amplitudes ``W_{g,mu}`` for every ``|mu| <= degree`` (all
    lengths, as the cut-and-join window needs them).  ``slack`` is added on top of
    the minimal Airy-chart order.
    """

    g_max: int = 2
    n_max: int = 3
    degree: int = 6
    slack: int = 2

    def __post_init__(self):
        if self.slack < 2:
            raise ValueError("slack must be at least 2")
        if self.g_max < 0 or self.n_max < 1 or self.degree < 1:
            raise ValueError("need g_max >= 0, n_max >= 1, degree >= 1")

    def correlator_cells(self) -> list[tuple[int, int]]:
        cells = [(g, n) for g in range(self.g_max + 1) for n in range(1, self.n_max + 1) if stable(g, n)]
        return sorted(cells, key=lambda c: (2 * c[0] - 2 + c[1], c[1]))

    def amplitude_cells(self) -> list[tuple[int, int]]:
        cells = [(g, n) for g in range(self.g_max + 1) for n in range(1, self.degree + 1)]
        return sorted(cells, key=lambda c: (2 * c[0] - 2 + c[1], c[1]))

    @property
    def max_top(self) -> int:
        """Largest ``3g - 3 + n`` over the demanded cells (their closure only lowers it)."""
        n_top = max(self.n_max, self.degree)
        return max(top_degree(self.g_max, n_top), 0)

    def order_v(self, g: int, n: int) -> int:
        """Airy-chart order for cell ``(g, n)``: products of two basis elements up to ``2(3g-3+n)+3``."""
        return 2 * max(top_degree(g, n), 0) + 5 + self.slack

    @property
    def chart_order_v(self) -> int:
        return 2 * self.max_top + 5 + self.slack

    @property
    def max_tail(self) -> int:
        """Largest tail exponent ever requested: Vandermonde grids reach ``3g-3+n+2``."""
        return max(self.degree, self.max_top + 2)

    @property
    def chart_order_x(self) -> int:
        return self.max_tail + 2 + self.slack

    def tail_reach(self, framing: Framing) -> int:
        """Largest exponent a read-out grid touches once rows with ``c_m(a) = 0`` are skipped."""
        return max(self.degree, readout_rows(self.max_top + 2, framing)[-1])

    def chart_order_x_for(self, framing: Framing) -> int:
        return self.tail_reach(framing) + 2 + self.slack
