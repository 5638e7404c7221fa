"""The cut-and-join equation for the generating series of triple Hodge integrals.

``C(lambda; a; p) = sum C_{g,mu}(a) lambda^(2g-2+l(mu)) p_mu`` is stored as a
:class:`PSeries` with :class:`PhasedScalar` coefficients, because every
``C_{g,mu}`` carries the factor ``i^(|mu|+l(mu))``.  Symmetrization turns the
genus-``g`` slice into the real n-point series ``Phi_{g,n}(x_1..x_n)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .curve import CurveChart, phi_series
from .exactalg import MultiSeries, PhasedScalar, RatFnA
from .exactalg.multiseries import TOTAL
from .hodge import AmplitudeTable, Partition, c_from_w, partitions, stable


class WindowError(ValueError):
    """A check window reaches beyond the data it would need."""


class PhaseError(ArithmeticError):
    """Symmetrization left a nonzero power of ``i``: a convention bug."""


# ---------------------------------------------------------------------------
# partition series


def _remove(parts: tuple[int, ...], *values: int) -> tuple[int, ...] | None:
    rest = list(parts)
    for v in values:
        if v not in rest:
            return None
        rest.remove(v)
    return tuple(rest)


def genus_of(k: int, mu: Partition) -> int:
    twice = k + 2 - mu.length
    if twice % 2:
        raise ValueError(f"lambda^{k} p_{mu} is not a genus-graded term")
    return twice // 2


@dataclass
class PSeries:
    """``(lambda exponent, mu) -> PhasedScalar`` for ``1 <= |mu| <= degree`` and genus ``<= g_max``."""

    degree: int
    g_max: int
    terms: dict = field(default_factory=dict)

    def add_term(self, k: int, mu, c: PhasedScalar) -> None:
        mu = mu if isinstance(mu, Partition) else Partition(tuple(mu))
        if mu.size > self.degree or mu.size < 1:
            return
        key = (k, mu)
        total = self.terms[key] + c if key in self.terms else c
        if total.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = total

    def coefficient(self, k: int, mu) -> PhasedScalar:
        mu = mu if isinstance(mu, Partition) else Partition(tuple(mu))
        return self.terms.get((k, mu), PhasedScalar(0))

    def like(self) -> "PSeries":
        return PSeries(self.degree, self.g_max)

    def __sub__(self, other: "PSeries") -> "PSeries":
        out = PSeries(min(self.degree, other.degree), min(self.g_max, other.g_max))
        for (k, mu), c in self.terms.items():
            out.add_term(k, mu, c)
        for (k, mu), c in other.terms.items():
            out.add_term(k, mu, -c)
        return out

    def d_da(self) -> "PSeries":
        """Coefficientwise derivative in the framing; needs symbolic coefficients."""
        out = self.like()
        for (k, mu), c in self.terms.items():
            if not isinstance(c.value, RatFnA):
                raise TypeError("d/da needs coefficients in Q(a); run with symbolic framing")
            out.add_term(k, mu, PhasedScalar(c.value.derivative(), c.phase))
        return out

    def genus_slice(self, g: int) -> dict:
        return {mu: c for (k, mu), c in self.terms.items() if genus_of(k, mu) == g}

    def is_zero(self) -> bool:
        return not self.terms


def cj_apply(F: PSeries) -> PSeries:
    """``(i lambda/2) sum_{i,j} (ij p_{i+j} F_ij + ij p_{i+j} F_i F_j + (i+j) p_i p_j F_{i+j})``, truncated.

    The result keeps the degree bound of ``F`` and is declared up to genus ``g_max + 1``.
    """
    out = PSeries(F.degree, F.g_max + 1)
    pref = PhasedScalar(Fraction(1, 2), 1)
    for (k, mu), c in F.terms.items():
        counts = Counter(mu.parts)
        # cut: two parts i, j merge into i + j
        for i in counts:
            for j in counts:
                mult = counts[i] * (counts[j] - (1 if i == j else 0))
                if mult:
                    rest = _remove(mu.parts, i, j)
                    out.add_term(k + 1, rest + (i + j,), pref * c * (i * j * mult))
        # join: a part s splits into i + j
        for s, n_s in counts.items():
            rest = _remove(mu.parts, s)
            for i in range(1, s):
                out.add_term(k + 1, rest + (i, s - i), pref * c * (s * n_s))
    items = list(F.terms.items())
    for (k1, mu1), c1 in items:
        cnt1 = Counter(mu1.parts)
        for (k2, mu2), c2 in items:
            if mu1.size + mu2.size > F.degree:
                continue
            cnt2 = Counter(mu2.parts)
            for i, n_i in cnt1.items():
                r1 = _remove(mu1.parts, i)
                for j, n_j in cnt2.items():
                    r2 = _remove(mu2.parts, j)
                    out.add_term(k1 + k2 + 1, r1 + r2 + (i + j,), pref * c1 * c2 * (i * j * n_i * n_j))
    return out


def assemble_C(amps: AmplitudeTable, g_max: int, D: int) -> PSeries:
    """``C_{g,mu} = -i^(|mu|+l) (-1)^(g+l) W_{g,mu}`` at ``lambda^(2g-2+l)``, for ``g <= g_max``, ``|mu| <= D``."""
    out = PSeries(D, g_max)
    for g in range(g_max + 1):
        for d in range(1, D + 1):
            for mu in partitions(d):
                if (g, mu) not in amps:
                    raise KeyError(f"missing amplitude W_{g},{mu} for the C-series")
                out.add_term(2 * g - 2 + mu.length, mu, c_from_w(g, mu, amps[g, mu]))
    return out


@dataclass
class Residual:
    """Offending ``(lambda order, mu)`` keys with both sides."""

    window: tuple[int, int]
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def records(self) -> list[dict]:
        return [{"key": {"lambda": k, "g": g, "mu": list(mu.parts)}, "lhs": str(l), "rhs": str(r)}
                for (k, g, mu), l, r in self.failures]


def check_cutjoin(C: PSeries, g_max: int | None = None, D: int | None = None) -> Residual:
    """``dC/da - CJ(C)`` on the window ``g <= g_max``, ``|mu| <= D``; the window must lie inside ``C``.

    A ``(g, mu)`` coefficient only involves terms of genus ``<= g`` and degree
    ``<= |mu|``, so a window inside the support of ``C`` is checked completely.
    """
    g_max = C.g_max if g_max is None else g_max
    D = C.degree if D is None else D
    if g_max > C.g_max or D > C.degree:
        raise WindowError(f"window g <= {g_max}, |mu| <= {D} exceeds the series (g <= {C.g_max}, |mu| <= {C.degree})")
    lhs = C.d_da()
    rhs = cj_apply(C)
    failures = []
    for d in range(1, D + 1):
        for mu in partitions(d):
            for g in range(g_max + 1):
                k = 2 * g - 2 + mu.length
                l, r = lhs.coefficient(k, mu), rhs.coefficient(k, mu)
                if l != r:
                    failures.append(((k, g, mu), l, r))
    return Residual((g_max, D), failures)


# ---------------------------------------------------------------------------
# symmetrization


def symmetrize(C: PSeries, g: int, n: int, D: int | None = None) -> MultiSeries:
    """``p_mu -> i^-(n+|mu|) delta_{l(mu),n} sum_sigma prod x_sigma(i)^mu_i`` on the genus-``g`` slice."""
    if n < 1:
        raise ValueError("n must be at least 1")
    D = C.degree if D is None else D
    terms = {}
    for mu, c in C.genus_slice(g).items():
        if mu.length != n or mu.size > D:
            continue
        val = PhasedScalar(c.value, c.phase - (n + mu.size)).normalized()
        if val.phase != 0:
            raise PhaseError(f"phase i^{val.phase} survives at p_{mu}")
        for exps in set(permutations(mu.parts)):
            terms[exps] = terms.get(exps, 0) + val.value * mu.aut
    return MultiSeries(n, D, terms, TOTAL)


def phi_from_amplitudes(amps: AmplitudeTable, g: int, n: int, D: int) -> MultiSeries:
    return symmetrize(assemble_C(amps, g, D), g, n, D)


def _univariate(series, D: int, nvars: int = 1, index: int = 0) -> MultiSeries:
    coeffs = {e: c for e, c in series.terms() if 1 <= e <= D}
    return MultiSeries.from_univariate(coeffs, nvars, index, D, TOTAL)


def phi_initial_closed_forms(chart: CurveChart, D: int) -> tuple[MultiSeries, MultiSeries]:
    """``Phi_{0,1} = -phi_{-2}`` and ``Phi_{0,2}`` from its closed logarithmic form.

    ``Phi_{0,2} = -ln((y_2 - y_1)/(x_1 - x_2)) + ln((1 - y_1)/x_1) + ln((1 - y_2)/x_2)``;
    with ``1 - y = u`` the first argument is the divided difference
    ``sum_k u_k h_{k-1}(x_1, x_2)`` and the others are ``u(x)/x``, all units.
    """
    if chart.order_x <= D + 1:
        raise ValueError(f"chart x-order {chart.order_x} too small for degree {D}")
    framing = chart.framing
    phi01 = _univariate(-phi_series(-2, D + 1, framing), D)
    u = {e: c for e, c in chart.u_x.terms() if e <= D + 1}
    one = framing.field(1)
    dd = {}
    for k, uk in u.items():
        for p in range(k):
            e = (p, k - 1 - p)
            if sum(e) <= D:
                dd[e] = dd.get(e, 0) + uk
    ratio1 = {(k - 1, 0): c for k, c in u.items() if k - 1 <= D}
    ratio2 = {(0, k - 1): c for k, c in u.items() if k - 1 <= D}
    assert dd.get((0, 0)) == one and ratio1[(0, 0)] == one
    log = lambda t: MultiSeries(2, D, t, TOTAL).log()
    phi02 = -log(dd) + log(ratio1) + log(ratio2)
    return phi01, phi02


# ---------------------------------------------------------------------------
# symmetrized equation


def _euler_first(phi: MultiSeries) -> MultiSeries:
    return phi.euler(0)


def _embed(phi: MultiSeries, positions: tuple[int, ...], n: int, D: int) -> MultiSeries:
    """Place the variables of ``phi`` at ``positions`` among ``n`` variables."""
    terms = {}
    for k, c in phi.terms.items():
        e = [0] * n
        for pos, x in zip(positions, k):
            e[pos] += x
        e = tuple(e)
        terms[e] = terms.get(e, 0) + c
    return MultiSeries(n, D, terms, TOTAL)


def pole_subtraction(F: MultiSeries, i: int, j: int, positions: tuple[int, ...], n: int, D: int) -> MultiSeries:
    """``x_j/(x_i - x_j) F(x_i, R) + x_i/(x_j - x_i) F(x_j, R)`` as an exact power series.

    ``F`` has its distinguished variable first.  For ``F = x^s R^rho`` the pair is
    ``sum_{p=1}^{s-1} x_i^p x_j^(s-p) R^rho``; the identity
    ``(x_i - x_j) * result = x_j F(x_i) - x_i F(x_j)`` is asserted on the way.
    """
    out: dict = {}
    for k, c in F.terms.items():
        s, rho = k[0], k[1:]
        if s == 0:
            raise ArithmeticError("pole-subtraction pair with a constant term has a genuine pole")
        for p in range(1, s):
            e = [0] * n
            e[i], e[j] = p, s - p
            for pos, x in zip(positions, rho):
                e[pos] += x
            e = tuple(e)
            out[e] = out.get(e, 0) + c
    result = MultiSeries(n, D + 1, out, TOTAL)
    # (x_i - x_j) * result against x_j F(x_i) - x_i F(x_j), all monomials of degree <= D + 1
    lhs: dict = {}
    for k, c in result.terms.items():
        for var, sign in ((i, 1), (j, -1)):
            e = list(k)
            e[var] += 1
            e = tuple(e)
            lhs[e] = lhs.get(e, 0) + sign * c
    rhs: dict = {}
    for k, c in F.terms.items():
        for first, other, sign in ((i, j, 1), (j, i, -1)):
            e = [0] * n
            e[first] += k[0]
            e[other] += 1
            for pos, x in zip(positions, k[1:]):
                e[pos] += x
            e = tuple(e)
            rhs[e] = rhs.get(e, 0) + sign * c
    bound = D + 1
    if MultiSeries(n, bound, lhs, TOTAL) != MultiSeries(n, bound, rhs, TOTAL):
        raise ArithmeticError("pole-subtraction term is not a power series")
    return MultiSeries(n, D, out, TOTAL)


@dataclass
class PhiSource:
    """All ``Phi_{g,n}`` needed by the symmetrized equation, to total degree ``D``."""

    amps: AmplitudeTable
    chart: CurveChart
    D: int
    _cache: dict = field(default_factory=dict)

    def __post_init__(self):
        self._C = None

    def phi(self, g: int, n: int) -> MultiSeries:
        key = (g, n)
        if key not in self._cache:
            if (g, n) == (0, 1):
                self._cache[key] = phi_initial_closed_forms(self.chart, self.D)[0]
            elif (g, n) == (0, 2):
                self._cache[key] = phi_initial_closed_forms(self.chart, self.D)[1]
            else:
                if self._C is None:
                    g_top = max(g for g, _ in self.amps.entries)
                    self._C = assemble_C(self.amps, g_top, self.D)
                self._cache[key] = symmetrize(self._C, g, n, self.D)
        return self._cache[key]


def symmetrized_rhs(g: int, n: int, D: int, src: PhiSource, literal: bool = False) -> MultiSeries:
    """The four right-hand-side groups of the symmetrized equation for ``d Phi_{g,n}/da``.

    When ``Phi_{g,n-1}`` is itself ``Phi_{0,2}`` (only at ``(0,3)``) the product
    ``x_i d_i Phi_{0,2}(x_i, x_j) x_i d_i Phi_{0,2}(x_i, x_k)`` arises once per
    unordered split ``{j, k}`` from the quadratic term, while the sum over ``j``
    visits it twice; it is weighted by 1/2 there.  ``literal=True`` drops that
    correction.  The pole subtraction comes from the join term and is never halved.
    """
    half = src.chart.framing.field(1) / 2
    phi = src.phi(g, n)
    rhs = MultiSeries(n, D, {}, TOTAL)
    others = lambda i: tuple(k for k in range(n) if k != i)

    # genus reduction: z_1 d/dz_1 z_2 d/dz_2 Phi_{g-1,n+1}(z_1, z_2, x_rest) at z_1 = z_2 = x_i
    if g >= 1:
        big = src.phi(g - 1, n + 1)
        for i in range(n):
            terms = {}
            for k, c in big.terms.items():
                e = [0] * n
                e[i] = k[0] + k[1]
                for pos, x in zip(others(i), k[2:]):
                    e[pos] += x
                e = tuple(e)
                terms[e] = terms.get(e, 0) + k[0] * k[1] * c
            rhs = rhs - MultiSeries(n, D, terms, TOTAL).scale(half)

    # stable splittings
    for i in range(n):
        rest = others(i)
        for r in range(len(rest) + 1):
            for A in combinations(rest, r):
                B = tuple(k for k in rest if k not in A)
                for g1 in range(g + 1):
                    g2 = g - g1
                    if not (stable(g1, len(A) + 1) and stable(g2, len(B) + 1)):
                        continue
                    f1 = _embed(_euler_first(src.phi(g1, len(A) + 1)), (i,) + A, n, D)
                    f2 = _embed(_euler_first(src.phi(g2, len(B) + 1)), (i,) + B, n, D)
                    rhs = rhs - (f1 * f2).scale(half)

    # Phi_{0,1} linear term
    d01 = _euler_first(src.phi(0, 1))
    for i in range(n):
        rhs = rhs - _embed(d01, (i,), n, D) * phi.euler(i)

    # Phi_{0,2} with the pole subtraction
    if n >= 2:
        d02 = _euler_first(src.phi(0, 2))
        small = _euler_first(src.phi(g, n - 1))
        weight = half if (g, n - 1) == (0, 2) and not literal else 1
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                rest = tuple(k for k in range(n) if k not in (i, j))
                F = _embed(small, (i,) + rest, n, D)
                rhs = rhs - (_embed(d02, (i, j), n, D) * F).scale(weight)
        for i in range(n):
            for j in range(i + 1, n):
                rest = tuple(k for k in range(n) if k not in (i, j))
                rhs = rhs + pole_subtraction(small, i, j, rest, n, D)
    return rhs


def check_symmetrized_cutjoin(g: int, n: int, D: int, amps: AmplitudeTable, chart: CurveChart,
                              source: PhiSource | None = None, literal: bool = False) -> MultiSeries:
    """``d Phi_{g,n}/da`` minus the right-hand side; zero when the equation holds."""
    if not stable(g, n):
        raise ValueError(f"({g}, {n}) is not stable")
    missing = [(gg, mu) for gg in range(g + 1) for d in range(1, D + 1) for mu in partitions(d)
               if (gg, mu) not in amps]
    if missing:
        gg, mu = missing[0]
        raise WindowError(f"amplitude W_{gg},{mu} needed for the window is missing")
    src = source or PhiSource(amps, chart, D)
    lhs = src.phi(g, n).map(lambda c: c.derivative())
    return lhs - symmetrized_rhs(g, n, D, src, literal)
