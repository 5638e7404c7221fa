"""The recursion in the Airy chart, where the deck involution is ``vhat -> -vhat``.

Each term of the recursion is a product of two odd series multiplied by the
kernel ``1/(2 xi^o_{-1})``; its principal part at orders ``<= -3`` is expanded
against the basis ``xi^o_{d+1}`` (leading pole ``vhat^-(2d+3)``).  Terms are
bilinear in lower one-point data, so the engine precomputes the expansions of
the basic products once (structure constants) and recombines them.
"""

from __future__ import annotations

from collections import defaultdict

from ..curve import CurveChart, kernel, x_dy_dx_in_vhat, xi_v_odd, y_in_vhat
from ..exactalg import LaurentSeries, PrecisionError
from ..hodge import top_degree
from .engine import MonomialRecursion, VerificationError, is_exceptional, splittings
from .plan import RecursionPlan

CUTOFF = -3


def solve_against_xi_basis(series: LaurentSeries, basis: dict, top: int) -> list:
    """Coefficients ``alpha_d`` with ``PP_{<=-3}(series) = sum_{d<=top} alpha_d PP(basis[d])``.

    ``basis[d]`` is the odd part of ``xi_{d+1}``, with leading exponent ``-(2d+3)``.
    Back-substitution runs from the deepest pole; anything left over is an error.
    """
    rest = series.principal_part(CUTOFF)
    if rest.valuation < -(2 * top + 3):
        raise VerificationError(f"pole of order {-rest.valuation} exceeds 2*{top}+3")
    alpha = [0] * (top + 1)
    for d in range(top, -1, -1):
        e = -(2 * d + 3)
        c = rest.coefficient(e)
        if c:
            lead = basis[d].coefficient(e)
            alpha[d] = c / lead
            rest = rest - basis[d].scale(alpha[d])
    leftover = next(rest.terms(), None)
    if leftover is not None:
        e, c = leftover
        raise VerificationError(f"principal part not spanned by the xi basis (v^{e}: {c})")
    return alpha


class OddFormRecursion(MonomialRecursion):
    """One-point data from the odd-part form of the recursion."""

    name = "odd form"

    def __init__(self, chart: CurveChart, plan: RecursionPlan):
        super().__init__(chart, plan)
        self.kern = kernel(chart)
        top = plan.max_top
        try:
            self.basis = {d: xi_v_odd(d + 1, chart).principal_part(CUTOFF) for d in range(top + 1)}
        except PrecisionError as exc:
            raise VerificationError(f"Airy chart too short for the xi basis: {exc}") from exc
        self._gamma: dict = {}
        self._theta: dict = {}
        self._xi: dict = {}
        self._delta = None

    # -- structure constants ----------------------------------------------

    def _expand(self, product_series: LaurentSeries) -> list:
        try:
            return solve_against_xi_basis(product_series * self.kern.inv_two_xi, self.basis, self.plan.max_top)
        except PrecisionError as exc:
            raise VerificationError(f"Airy chart too short: {exc}") from exc

    def gamma(self, b: int, c: int) -> list:
        """Expansion of ``xi^o_{b+1} xi^o_{c+1} / (2 xi^o_{-1})``."""
        key = (min(b, c), max(b, c))
        if key not in self._gamma:
            self._gamma[key] = self._expand(xi_v_odd(b + 1, self.chart) * xi_v_odd(c + 1, self.chart))
        return self._gamma[key]

    def theta(self, m: int, c: int) -> list:
        """Expansion of ``B^o_m xi^o_{c+1} / (2 xi^o_{-1})`` (one exceptional factor)."""
        key = (m, c)
        if key not in self._theta:
            self._theta[key] = self._expand(self.kern.B_odd[m] * xi_v_odd(c + 1, self.chart))
        return self._theta[key]

    def xi_pair(self, m: int, mm: int) -> list:
        """Expansion of ``B^o_m B^o_m' / (2 xi^o_{-1})`` (two exceptional factors)."""
        key = (min(m, mm), max(m, mm))
        if key not in self._xi:
            self._xi[key] = self._expand(self.kern.B_odd[m] * self.kern.B_odd[mm])
        return self._xi[key]

    def delta(self) -> list:
        """Expansion of the ``(1,1)`` term ``-h(v) h(-v) / (y(v) - y(-v))^2 / (2 xi^o_{-1})``."""
        if self._delta is None:
            h = x_dy_dx_in_vhat(self.chart)
            y = y_in_vhat(self.chart)
            dy = y - y.negate_variable()
            inv = dy.inverse()
            G = h * h.negate_variable() * inv * inv
            self._delta = self._expand(-G)
        return self._delta

    # -- recursion ---------------------------------------------------------

    def _compute(self, g: int, n: int, tails: tuple[int, ...]) -> list:
        top = top_degree(g, n)
        width = self.plan.max_top + 1
        pair = defaultdict(int)
        exc = defaultdict(int)
        direct = [0] * width

        if g >= 1:
            if (g, n) == (1, 1):
                direct = [x + y for x, y in zip(direct, self.delta())]
            else:
                M = self.genus_pair(g - 1, n + 1, tails)
                s = self.sign(g - 1, n + 1)
                for b, row in enumerate(M):
                    for c, v in enumerate(row):
                        if v:
                            pair[(b, c)] += s * v

        for mult, g1, A, g2, B in splittings(g, tails):
            e1 = is_exceptional(g1, len(A) + 1)
            e2 = is_exceptional(g2, len(B) + 1)
            if e1 and e2:
                direct = [x + mult * y for x, y in zip(direct, self.xi_pair(A[0], B[0]))]
            elif e1 or e2:
                m, (gs, S) = (A[0], (g2, B)) if e1 else (B[0], (g1, A))
                Y = self.one_point(gs, len(S) + 1, S)
                s = mult * self.sign(gs, len(S) + 1)
                for c, y in enumerate(Y):
                    if y:
                        exc[(m, c)] += s * y
            else:
                Y1 = self.one_point(g1, len(A) + 1, A)
                Y2 = self.one_point(g2, len(B) + 1, B)
                s = mult * self.sign(g1, len(A) + 1) * self.sign(g2, len(B) + 1)
                for b, y1 in enumerate(Y1):
                    if y1:
                        for c, y2 in enumerate(Y2):
                            if y2:
                                pair[(b, c)] += s * y1 * y2

        total = direct
        for (b, c), w in pair.items():
            if w:
                total = [x + w * y for x, y in zip(total, self.gamma(b, c))]
        for (m, c), w in exc.items():
            if w:
                total = [x + w * y for x, y in zip(total, self.theta(m, c))]
        if any(total[top + 1:]):
            raise VerificationError(f"odd form ({g},{n}) tails {tails}: terms beyond degree {top}")
        s = self.sign(g, n)
        return [x / s for x in total[: top + 1]]
