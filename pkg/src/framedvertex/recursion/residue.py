"""The recursion as a residue at the ramification point, in the coordinate ``z = y - y*``.

Forms are written relative to ``dz`` in the integration variable and to
``dx_i/x_i`` in the others.  With ``L = d log x/dz`` and
``Delta = ln y(z) - ln y(P(z))`` every term of the recursion becomes a series
``Q(z)`` and contributes

    Res_{z=0} 1/2 (1/(z_1 - z) - 1/(z_1 - P(z))) Q(z) dz

to ``W_g`` relative to ``dz_1``.  The exceptional factor ``W_{0,2}(z, y_i)`` is
split into its ``y``-part and the part ``x(z) x_i/(x(z) - x_i)^2``; the latter
carries powers of ``x*`` that are independent of Q(a), so its contributions
are computed separately and required to vanish.
"""

from __future__ import annotations

from collections import defaultdict

from ..curve import (
    CurveChart,
    dlogx_dz,
    involution_series,
    kernel,
    log_y_ratio,
    t_of_z,
    x_u_prime_powers,
    xi_hat,
)
from ..exactalg import LaurentSeries, PrecisionError
from ..hodge import readout_rows, solve_basis_axis, top_degree
from .engine import MonomialRecursion, VerificationError, is_exceptional, splittings
from .plan import RecursionPlan


class ResidueFormRecursion(MonomialRecursion):
    """One-point data from the residue form, read off x-monomial by x-monomial."""

    name = "residue form"

    def __init__(self, chart: CurveChart, plan: RecursionPlan):
        super().__init__(chart, plan)
        a = self.a
        self.kern = kernel(chart)
        P = involution_series(chart).P
        self.P = P
        self.dP = P.derivative()
        order = P.trunc
        self.L = dlogx_dz(chart, order)
        self.inv_delta = log_y_ratio(chart, P).inverse()
        self.L_over_delta = self.L * self.inv_delta
        self.inv_delta_L = self.inv_delta * self.L.inverse()
        self.tz = t_of_z(chart)
        self.tP = P.inverse().scale(1 / (a + 1))
        one = chart.framing.field(1)
        self.U = (LaurentSeries("z", 0, [one, 1 / chart.y_star], order).power(a)
                  * LaurentSeries("z", 0, [one, -(a + 1)], order))
        self.n_rows = readout_rows(plan.max_top + 2, chart.framing)[-1]
        self._xz: dict = {}
        self._xp: dict = {}
        self._beta: dict = {}
        self._beta_p: dict = {}
        self._vectors: dict = {}
        self._T = None
        self._numerators = x_u_prime_powers(chart, chart.order_x - 2)

    # -- building blocks ---------------------------------------------------

    def xi_z(self, b: int) -> LaurentSeries:
        """``xi_hat_b(t(z))``, exact."""
        if b not in self._xz:
            self._xz[b] = xi_hat(b, self.chart).compose(self.tz)
        return self._xz[b]

    def xi_P(self, b: int) -> LaurentSeries:
        """``xi_hat_b(t(P(z)))``."""
        if b not in self._xp:
            self._xp[b] = xi_hat(b, self.chart).compose(self.tP)
        return self._xp[b]

    def beta(self, m: int) -> LaurentSeries:
        """Coefficient of ``x_i^m`` in ``(x_i dy_i/dx_i) / (y(z) - y_i)^2``."""
        if m not in self._beta:
            a = self.a
            order = self.P.trunc
            c_inv = LaurentSeries("z", 0, [-1 / (a + 1), self.chart.framing.field(1)], order).inverse()
            acc = LaurentSeries.zero("z", order)
            pw = c_inv * c_inv
            for k in range(m):
                e = self._numerators[k].coefficient(m)
                if e:
                    acc = acc + pw.scale((k + 1) * (1 if k % 2 == 0 else -1) * e)
                pw = pw * c_inv
            self._beta[m] = acc
        return self._beta[m]

    def beta_P(self, m: int) -> LaurentSeries:
        """The same factor pulled back by the involution: ``P'(z) beta_m(P(z))``."""
        if m not in self._beta_p:
            self._beta_p[m] = self.dP * self.beta(m).compose(self.P)
        return self._beta_p[m]

    def x_part(self, m: int) -> LaurentSeries:
        """``m U(z)^-m`` with ``x(z) = x* U(z)``: the ``x_i^m`` coefficient of ``x x_i/(x - x_i)^2``, times ``x*^m``."""
        return self.U.power(-m).scale(m)

    def _basis_rows(self):
        if self._T is None:
            a = self.a
            base = self._numerators[0]  # -x u'(x) = x dy/dx
            tt = self.chart.t_x.scale(a + 1)
            pw = tt
            rows = []
            k_max = max(self.kern.a_m) + 1
            for _ in range(k_max + 1):
                rows.append(pw * base)
                pw = pw * tt
            self._T = rows
        return self._T

    def residue_vector(self, Q: LaurentSeries) -> list:
        """Coefficients of ``x_1^{m_1}``, ``m_1 = 1..n_rows``, of the residue relative to ``dx_1/x_1``."""
        try:
            pp = Q.principal_part(-2)
        except PrecisionError as exc:
            raise VerificationError(f"z-chart too short: {exc}") from exc
        r = defaultdict(int)
        for e, q in pp.terms():
            m = -e - 1
            if m not in self.kern.a_m:
                raise VerificationError(f"kernel expansion too short for z^{m}")
            for k, am in self.kern.a_m[m].items():
                r[k] += am * q
        T = self._basis_rows()
        out = [0] * self.n_rows
        for k, rk in r.items():
            if rk:
                row = T[k]
                for m1 in range(1, self.n_rows + 1):
                    out[m1 - 1] += rk * row.coefficient(m1)
        half = self.chart.framing.field(1) / 2
        return [x * half for x in out]

    def _vector(self, key, build) -> list:
        if key not in self._vectors:
            self._vectors[key] = self.residue_vector(build())
        return self._vectors[key]

    def v_pair(self, b: int, c: int) -> list:
        """First factor ``xi_{b+1}`` at ``z``, second ``xi_{c+1}`` at ``P(z)``."""
        return self._vector(("pair", b, c), lambda: self.xi_z(b + 1) * self.xi_P(c + 1) * self.L_over_delta)

    def v_exc_first(self, m: int, c: int) -> list:
        return self._vector(("excA", m, c), lambda: self.beta(m) * self.xi_P(c + 1) * self.inv_delta)

    def v_exc_second(self, b: int, m: int) -> list:
        return self._vector(("excB", b, m), lambda: self.xi_z(b + 1) * self.beta_P(m) * self.inv_delta)

    def v_exc_both(self, m: int, mm: int) -> list:
        return self._vector(("excAB", m, mm), lambda: self.beta(m) * self.beta_P(mm) * self.inv_delta_L)

    def v_genus_one(self) -> list:
        """``P'(z) / (z - P(z))^2``, the y-part of ``W_{0,2}(z, P(z))``."""
        def build():
            diff = LaurentSeries.monomial("z", 1, self.chart.framing.field(1)) - self.P
            inv = diff.inverse()
            return self.dP * inv * inv * self.inv_delta_L
        return self._vector(("genus1",), build)

    # -- vanishing of the x-parts -------------------------------------------

    def check_x_part_stable(self, m: int, c: int) -> None:
        """``x*^-m``-terms of an exceptional factor against a stable one, both orders."""
        def build():
            return self.x_part(m) * (self.xi_P(c + 1) + self.xi_z(c + 1)) * self.L_over_delta
        if any(self._vector(("xA", m, c), build)):
            raise VerificationError(f"x-part of W_(0,2) with x^{m} against xi_{c + 1} does not cancel")

    def check_x_part_pair(self, m: int, mm: int) -> None:
        """``x*^-m`` and ``x*^-(m+m')`` terms of two exceptional factors."""
        def single():
            return self.x_part(m) * (self.beta(mm) + self.beta_P(mm)) * self.inv_delta
        def double():
            return self.x_part(m) * self.x_part(mm) * self.L_over_delta
        if any(self._vector(("xB", m, mm), single)) or any(self._vector(("xC", m, mm), double)):
            raise VerificationError(f"x-part of W_(0,2) x W_(0,2) with x^{m}, x^{mm} does not cancel")

    # -- recursion ---------------------------------------------------------

    def _compute(self, g: int, n: int, tails: tuple[int, ...]) -> list:
        top = top_degree(g, n)
        total = [0] * self.n_rows

        def add(weight, vec):
            for i, v in enumerate(vec):
                if v:
                    total[i] += weight * v

        if g >= 1:
            if (g, n) == (1, 1):
                add(1, self.v_genus_one())
            else:
                M = self.genus_pair(g - 1, n + 1, tails)
                s = self.sign(g - 1, n + 1)
                for b, row in enumerate(M):
                    for c, v in enumerate(row):
                        if v:
                            add(s * v, self.v_pair(b, c))

        for mult, g1, A, g2, B in splittings(g, tails):
            e1 = is_exceptional(g1, len(A) + 1)
            e2 = is_exceptional(g2, len(B) + 1)
            if e1 and e2:
                self.check_x_part_pair(A[0], B[0])
                add(mult, self.v_exc_both(A[0], B[0]))
            elif e1:
                Y = self.one_point(g2, len(B) + 1, B)
                s = mult * self.sign(g2, len(B) + 1)
                for c, y in enumerate(Y):
                    if y:
                        self.check_x_part_stable(A[0], c)
                        add(s * y, self.v_exc_first(A[0], c))
            elif e2:
                Y = self.one_point(g1, len(A) + 1, A)
                s = mult * self.sign(g1, len(A) + 1)
                for b, y in enumerate(Y):
                    if y:
                        add(s * y, self.v_exc_second(b, B[0]))
            else:
                Y1 = self.one_point(g1, len(A) + 1, A)
                Y2 = self.one_point(g2, len(B) + 1, B)
                s = mult * self.sign(g1, len(A) + 1) * self.sign(g2, len(B) + 1)
                for b, y1 in enumerate(Y1):
                    if y1:
                        for c, y2 in enumerate(Y2):
                            if y2:
                                add(s * y1 * y2, self.v_pair(b, c))

        s = self.sign(g, n)
        rows = {m1: total[m1 - 1] / s for m1 in range(1, self.n_rows + 1)}
        keep = readout_rows(top + 2, self.framing)
        rows = {m1: v for m1, v in rows.items() if m1 in keep}
        try:
            return solve_basis_axis(rows, top + 1, self.framing)
        except ArithmeticError as exc:
            raise VerificationError(f"residue form ({g},{n}) tails {tails}: {exc}") from exc
