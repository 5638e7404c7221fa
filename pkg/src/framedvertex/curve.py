"""Series attached to the framed mirror curve ``x = y^a - y^(a+1)``.

Coordinates used throughout:

* ``x`` with ``u(x)`` the branch through the origin of ``x = u (1 - u)^a`` and ``y = 1 - u``;
* ``t = 1 / ((a+1) y - a)``, so that ``t = 1 + (a+1) phi_0(x)``;
* ``z = y - a/(a+1)``, centred at the ramification point, with ``t = 1/((a+1) z)``;
* the rescaled Airy coordinate ``vhat`` (series variable ``"v"``), defined by
  ``w = ((a+1)/a) vhat^2 / 2`` where ``x = x* exp(-w)``.  The sheet involution is
  ``vhat -> -vhat``.

Every coefficient lives in Q(a) (or Q for a specialized framing).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .exactalg import LaurentSeries, PrecisionError, RatFnA, polynomial
from .exactalg.ratfn import format_rational, parse_rational

Field = Union[RatFnA, Fraction]


# ---------------------------------------------------------------------------
# framing


@dataclass(frozen=True)
class Framing:
    """The framing parameter: a symbol or an admissible rational value."""

    a: Field
    symbolic: bool

    @classmethod
    def symbol(cls) -> "Framing":
        return cls(RatFnA.variable(), True)

    @classmethod
    def rational(cls, value) -> "Framing":
        value = Fraction(value)
        if value in (0, -1):
            raise ValueError(f"framing a = {value} is excluded (1/a and 1/(a+1) occur)")
        return cls(value, False)

    @classmethod
    def parse(cls, text: str) -> "Framing":
        if text.strip().lower() in ("symbolic", "a"):
            return cls.symbol()
        return cls.rational(parse_rational(text))

    @property
    def label(self) -> str:
        return "symbolic" if self.symbolic else format_rational(self.a)

    def field(self, value) -> Field:
        """Coerce an integer or rational into the coefficient field."""
        return RatFnA(value) if self.symbolic else Fraction(value)

    def specialize(self, value, at) -> Fraction:
        """Evaluate a field element at ``a = at`` (identity on a rational framing)."""
        if isinstance(value, RatFnA):
            return value.evaluate(at)
        return Fraction(value)


def framing_of(a: Field) -> Framing:
    if isinstance(a, RatFnA):
        return Framing(a, True)
    return Framing.rational(a)


# ---------------------------------------------------------------------------
# elementary coefficient families


def c_coefficient(m: int, a: Field) -> Field:
    """``c_m = prod_{j=1}^{m-1} (m a + j) / (m-1)!``, the coefficient of ``x^m`` in ``phi_0``."""
    out = a * 0 + 1
    for j in range(1, m):
        out = out * (m * a + j) * Fraction(1, j)
    return out


def u_coefficient(n: int, a: Field) -> Field:
    """Closed form ``prod_{j=0}^{n-2} (n a + j) / n!`` of the coefficients of ``u(x)``."""
    out = a * 0 + 1
    for j in range(0, n - 1):
        out = out * (n * a + j)
    for j in range(1, n + 1):
        out = out * Fraction(1, j)
    return out


def phi_series(b: int, order_x: int, framing: Framing) -> LaurentSeries:
    """``phi_b(x) = sum_m c_m m^b x^m`` known below ``x^order_x``."""
    if b < -2:
        raise ValueError("phi_b is only used for b >= -2")
    a = framing.a
    terms = {m: c_coefficient(m, a) * Fraction(m) ** b for m in range(1, order_x)}
    return LaurentSeries.from_dict("x", terms, order_x)


# ---------------------------------------------------------------------------
# ramification point


@dataclass(frozen=True)
class RamificationX:
    """The value ``x* = a^a / (a+1)^(a+1)``, kept as an expression.

    It is only evaluated for integer framings, where it is rational.
    """

    framing: Framing

    def evaluate(self) -> Fraction:
        a = self.framing.a
        if self.framing.symbolic or Fraction(a).denominator != 1:
            raise ValueError("x* = a^a/(a+1)^(a+1) is not rational for this framing")
        n = int(a)
        return Fraction(n) ** n / Fraction(n + 1) ** (n + 1)

    def __str__(self) -> str:
        if self.framing.symbolic:
            return "a^a/(a+1)^(a+1)"
        try:
            return format_rational(self.evaluate())
        except ValueError:
            a = format_rational(self.framing.a)
            return f"({a})^({a})/({a}+1)^({a}+1)"


def dx_dy_factor(y: Field, a: Field) -> Field:
    """``dx/dy = y^(a-1) * (a - (a+1) y)``; returns the polynomial factor."""
    return a - (a + 1) * y


def d2x_dy2_factor(y: Field, a: Field) -> Field:
    """``d^2x/dy^2 = y^(a-2) * ((a-1)(a - (a+1) y) - (a+1) y)``; returns the factor."""
    return (a - 1) * (a - (a + 1) * y) - (a + 1) * y


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class CurveChart:
    """The coordinate series of the curve, built once and shared read-only."""

    framing: Framing
    order_x: int
    order_v: int
    u_x: LaurentSeries
    y_x: LaurentSeries
    t_x: LaurentSeries
    w_s: LaurentSeries
    vhat_s: LaurentSeries
    s_v: LaurentSeries
    t_v: LaurentSeries
    z_v: LaurentSeries
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def a(self) -> Field:
        return self.framing.a

    @property
    def y_star(self) -> Field:
        return self.a / (self.a + 1)


def build_chart(framing: Framing, order_x: int, order_v: int) -> CurveChart:
    """Build the x-chart (by Lagrange inversion) and the Airy chart (by reversion of vhat(1/t))."""
    if order_x < 4 or order_v < 4:
        raise ValueError("chart orders must be at least 4")
    if not isinstance(framing, Framing):
        framing = Framing.parse(str(framing))
    a = framing.a
    one = framing.field(1)

    # x = u (1-u)^a, inverted to u(x)
    one_minus_u = LaurentSeries("u", 0, [one, -one], order_x - 1)
    x_of_u = one_minus_u.power(a).shift(1)
    u_x = x_of_u.reversion(var="x")
    y_x = one - u_x
    t_x = one + phi_series(0, order_x, framing).scale(a + 1)

    # w(s) with s = 1/t, then vhat(s) from w = ((a+1)/a) vhat^2 / 2
    order_s = order_v + 2
    order_w = order_s + 1
    log1 = LaurentSeries("s", 0, [one, -one], order_w).log()
    log2 = LaurentSeries("s", 0, [one, 1 / a], order_w).log()
    w_s = -log1 - log2.scale(a)
    ratio = w_s.shift(-2).scale(2 * a / (a + 1))
    vhat_s = ratio.power(Fraction(1, 2)).shift(1)
    s_v = vhat_s.reversion(var="v")
    t_v = s_v.inverse()
    z_v = s_v.scale(1 / (a + 1))
    if t_v.trunc < order_v:
        raise PrecisionError("Airy chart lost precision")
    return CurveChart(framing, order_x, order_v, u_x, y_x, t_x, w_s, vhat_s, s_v,
                      t_v.truncate(order_v), z_v)


def ramification_point(chart: CurveChart) -> tuple[RamificationX, Field]:
    """``(x*, y*) = (a^a/(a+1)^(a+1), a/(a+1))``."""
    return RamificationX(chart.framing), chart.y_star


# ---------------------------------------------------------------------------
# involution


@dataclass(frozen=True)
class Involution:
    """The deck involution ``P(z)``; in the Airy chart it is ``vhat -> -vhat``."""

    P: LaurentSeries
    negates_vhat: bool = True

    def __call__(self, series: LaurentSeries) -> LaurentSeries:
        return series.compose(self.P)


def involution_series(chart: CurveChart, order: int | None = None) -> Involution:
    """``P(z) = z(-vhat(z))`` computed through the Airy chart."""
    key = ("involution", order)
    if key in chart._cache:
        return chart._cache[key]
    z_v = chart.z_v
    vhat_z = z_v.reversion(var="z")
    P = z_v.negate_variable().compose(vhat_z)
    if order is not None:
        if P.trunc < order:
            raise PrecisionError(f"involution known to z^{P.trunc}, {order} requested")
        P = P.truncate(order)
    inv = Involution(P)
    chart._cache[key] = inv
    return inv


# ---------------------------------------------------------------------------
# xi-hat basis


def D_t(p: LaurentSeries, a: Field) -> LaurentSeries:
    """``D_t = (1/(a+1)) t (t-1) (a t + 1) d/dt`` on polynomials in ``t``."""
    one = a * 0 + 1
    cubic = polynomial("t", [0, -one, 1 - a, a])  # t (t-1) (a t + 1)
    return (cubic * p.derivative()).scale(1 / (a + 1))


@dataclass(frozen=True)
class XiHatLog:
    """``xi_hat_{-1} = ln t - ln(t + 1/a) - ln(a/(a+1))``.

    The constant ``-ln(a/(a+1))`` is not an element of Q(a); the series
    realizations below state what they do with it.
    """

    framing: Framing

    def in_x(self, chart: CurveChart) -> LaurentSeries:
        """Exact series in ``x``: ``ln t - ln((a t + 1)/(a + 1))``, both arguments units."""
        a = self.framing.a
        t = chart.t_x
        return t.log() - (t.scale(a) + 1).scale(1 / (a + 1)).log()

    def in_vhat(self, chart: CurveChart) -> LaurentSeries:
        """``ln(vhat t) - ln(vhat (t + 1/a))``: ``xi_{-1}`` minus its value at ``vhat = 0``."""
        a = self.framing.a
        vt = chart.t_v.shift(1)
        return vt.log() - (vt + LaurentSeries.monomial("v", 1, 1 / a)).log()

    def __str__(self) -> str:
        return "ln t - ln(t + 1/a) - ln(a/(a+1))"


def xi_hat(b: int, chart_or_framing) -> LaurentSeries | XiHatLog:
    """``xi_hat_0 = (t-1)/(a+1)``, ``xi_hat_{b+1} = D_t xi_hat_b``; ``b = -1`` gives the log form."""
    framing = chart_or_framing.framing if isinstance(chart_or_framing, CurveChart) else chart_or_framing
    if b < -1:
        raise ValueError("xi_hat_b is only available for b >= -1")
    if b == -1:
        return XiHatLog(framing)
    return _xi_hat_poly(b, framing)


@lru_cache(maxsize=None)
def _xi_hat_poly(b: int, framing: Framing) -> LaurentSeries:
    a = framing.a
    p = polynomial("t", [-1, 1]).scale(1 / (a + 1))
    for _ in range(b):
        p = D_t(p, a)
    return p


def xi_v(b: int, chart: CurveChart) -> LaurentSeries:
    """``xi_b(vhat) = xi_hat_b(t(vhat))``; for ``b = -1`` the constant at ``vhat = 0`` is dropped."""
    key = ("xi_v", b)
    if key not in chart._cache:
        if b == -1:
            out = XiHatLog(chart.framing).in_vhat(chart)
        else:
            out = xi_hat(b, chart).compose(chart.t_v)
        chart._cache[key] = out
    return chart._cache[key]


def xi_v_odd(b: int, chart: CurveChart) -> LaurentSeries:
    key = ("xi_v_odd", b)
    if key not in chart._cache:
        chart._cache[key] = xi_v(b, chart).odd_part()
    return chart._cache[key]


# ---------------------------------------------------------------------------
# z-chart helpers


def dlogx_dz(chart: CurveChart, order: int) -> LaurentSeries:
    """``L(z) = d log x / dz = a/(y* + z) - 1/(1 - y* - z)``, known below ``z^order``."""
    a = chart.a
    c1 = -(a + 1) / a
    terms = {k: (a + 1) * (c1**k - (a + 1) ** k) for k in range(1, order)}
    return LaurentSeries.from_dict("z", terms, order)


def log_y_ratio(chart: CurveChart, P: LaurentSeries) -> LaurentSeries:
    """``ln y(z) - ln y(P(z))`` as a series in ``z`` (the constant ``ln y*`` cancels)."""
    inv_ys = 1 / chart.y_star
    one = chart.framing.field(1)
    log_z = LaurentSeries("z", 0, [one, inv_ys], P.trunc).log()
    log_p = (P.scale(inv_ys) + one).log()
    return log_z - log_p


def t_of_z(chart: CurveChart) -> LaurentSeries:
    """``t = 1/((a+1) z)`` exactly."""
    return LaurentSeries.monomial("z", -1, 1 / (chart.a + 1))


def y_in_vhat(chart: CurveChart) -> LaurentSeries:
    """``y(vhat) = a/(a+1) + z(vhat)``."""
    return chart.z_v + chart.y_star


def x_dy_dx_in_vhat(chart: CurveChart) -> LaurentSeries:
    """``h = x dy/dx = -(a t + (1 - a) - 1/t) / (a+1)^2`` on the Airy chart."""
    a = chart.a
    t, s = chart.t_v, chart.s_v.truncate(chart.t_v.trunc)
    return (t.scale(a) + (1 - a) - s).scale(-1 / (a + 1) ** 2)


def x_u_prime_powers(chart: CurveChart, k_max: int) -> list[LaurentSeries]:
    """``u^k * (-x u'(x))`` for ``k = 0..k_max``: the numerators of the exceptional factor."""
    base = -chart.u_x.euler()
    out = [base]
    for _ in range(k_max):
        out.append(out[-1] * chart.u_x)
    return out


# ---------------------------------------------------------------------------
# recursion kernel


@dataclass(frozen=True)
class RecursionKernel:
    """Both kernel forms of the recursion.

    ``inv_two_xi`` is ``1/(2 xi^o_{-1}(vhat))``; ``B_odd[m]`` is the coefficient of
    ``x_i^m`` in the odd part of ``h(vhat) (x_i dy_i/dx_i) / (y(vhat) - y_i)^2``;
    ``omega`` is the coefficient of ``dz`` in ``(ln y(z) - ln y(P(z))) dx/x``;
    ``a_m[m]`` maps ``k`` to the coefficient of ``z_1^-(k+1)`` in the ``z^m``
    coefficient of ``1/(z_1 - z) - 1/(z_1 - P(z))``.
    """

    inv_two_xi: LaurentSeries
    B_odd: dict
    omega: LaurentSeries
    a_m: dict


def exceptional_factor(chart: CurveChart, m_max: int) -> dict[int, LaurentSeries]:
    """Coefficients ``B_m(vhat)`` of ``x_i^m``, ``m = 1..m_max``, before taking odd parts."""
    if m_max >= chart.order_x:
        raise PrecisionError(f"x-order {chart.order_x} too small for x_i^{m_max}")
    a = chart.a
    h = x_dy_dx_in_vhat(chart)
    c = chart.z_v - 1 / (a + 1)  # y(vhat) - 1
    c_inv = c.inverse()
    numerators = x_u_prime_powers(chart, m_max - 1)
    c_pows = [c_inv * c_inv]
    for _ in range(m_max):
        c_pows.append(c_pows[-1] * c_inv)
    out = {}
    for m in range(1, m_max + 1):
        acc = LaurentSeries.zero("v", c_pows[0].trunc)
        for k in range(0, m):
            e = numerators[k].coefficient(m)
            if e:
                sign = 1 if k % 2 == 0 else -1
                acc = acc + c_pows[k].scale(sign * (k + 1) * e)
        out[m] = h * acc
    return out


def kernel(chart: CurveChart, order_v: int | None = None, order_x: int | None = None) -> RecursionKernel:
    """Assemble the Airy-chart and z-chart kernels."""
    order_x = chart.order_x - 1 if order_x is None else order_x
    xi_m1_odd = xi_v_odd(-1, chart)
    inv_two_xi = xi_m1_odd.scale(2).inverse()
    B = exceptional_factor(chart, order_x)
    B_odd = {m: s.odd_part() for m, s in B.items()}
    inv = involution_series(chart)
    P = inv.P
    order_z = P.trunc
    omega = log_y_ratio(chart, P) * dlogx_dz(chart, order_z)
    a_m = {}
    P_pows = {0: LaurentSeries.constant("z", chart.framing.field(1))}
    for k in range(1, order_z):
        P_pows[k] = P_pows[k - 1] * P
    for m in range(1, order_z):
        row = {}
        for k in range(1, m + 1):
            val = (1 if k == m else 0) - P_pows[k].coefficient(m)
            if val:
                row[k] = val
        a_m[m] = row
    return RecursionKernel(inv_two_xi, B_odd, omega, a_m)
