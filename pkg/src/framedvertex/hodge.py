"""Correlators, amplitudes and the independent low-genus oracles.

A correlator is the triple Hodge integral ``<tau_{b_1} ... tau_{b_n} T_g(a)>_g``,
a polynomial in ``a``.  An amplitude ``W_{g,mu}(a)`` is the combination

    W_{g,mu} = (-1)^(g+l) / |Aut mu| * (a(a+1))^(l-1) * prod_i c_{mu_i}
               * sum_b prod_i mu_i^(b_i) <prod tau_{b_i} T_g(a)>_g

with ``c_m = prod_{j=1}^{m-1} (m a + j) / (m-1)!``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Mapping

from .curve import Field, Framing, c_coefficient
from .exactalg import PhasedScalar, PolyA, RatFnA, MultiSeries
from .exactalg.multiseries import PER_VARIABLE, TOTAL
from .exactalg.ratfn import coefficient_array, to_json_value


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @cached_property
    def aut(self) -> int:
        out = 1
        for mult in Counter(self.parts).values():
            out *= math.factorial(mult)
        return out

    @cached_property
    def z(self) -> int:
        return self.aut * math.prod(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n: int, max_part: int | None = None) -> Iterable[Partition]:
    """All partitions of ``n`` (non-increasing parts)."""
    def rec(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail
    for parts in rec(n, n if max_part is None else max_part):
        yield Partition(parts)


def partitions_up_to(d: int) -> list[Partition]:
    return [mu for n in range(1, d + 1) for mu in partitions(n)]


# ---------------------------------------------------------------------------
# tables


def stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def top_degree(g: int, n: int) -> int:
    """``3g - 3 + n``, the dimension of the moduli space."""
    return 3 * g - 3 + n


@dataclass
class CorrelatorTable:
    """``(g, sorted b) -> value``; values are polynomials in ``a`` (or rationals when specialized)."""

    framing: Framing
    entries: dict = field(default_factory=dict)

    @staticmethod
    def key(g: int, b: Iterable[int]) -> tuple[int, tuple[int, ...]]:
        return g, tuple(sorted(b))

    def __setitem__(self, key, value) -> None:
        g, b = key
        self.entries[self.key(g, b)] = value

    def get(self, g: int, b: Iterable[int]):
        g, b = self.key(g, b)
        if sum(b) > top_degree(g, len(b)):
            return 0
        if (g, b) not in self.entries:
            raise KeyError(f"missing correlator <{' '.join(f'tau_{x}' for x in b)} T_{g}>_{g}")
        return self.entries[(g, b)]

    def __getitem__(self, key):
        return self.get(*key)

    def cell(self, g: int, n: int) -> dict:
        return {k: v for k, v in self.entries.items() if k[0] == g and len(k[1]) == n}

    def to_records(self) -> list[dict]:
        return [
            {"g": g, "b": list(b), "value": coefficient_array(v)}
            for (g, b), v in sorted(self.entries.items())
        ]


@dataclass
class AmplitudeTable:
    """``(g, mu) -> W_{g,mu}(a)``."""

    framing: Framing
    entries: dict = field(default_factory=dict)

    def __setitem__(self, key, value) -> None:
        g, mu = key
        self.entries[(g, _as_partition(mu))] = value

    def __getitem__(self, key):
        g, mu = key
        mu = _as_partition(mu)
        if (g, mu) not in self.entries:
            raise KeyError(f"missing amplitude W_{g},{mu}")
        return self.entries[(g, mu)]

    def __contains__(self, key) -> bool:
        g, mu = key
        return (g, _as_partition(mu)) in self.entries

    def C(self, g: int, mu) -> PhasedScalar:
        """``C_{g,mu} = -i^(|mu|+l) (-1)^(g+l) W_{g,mu}``."""
        mu = _as_partition(mu)
        return c_from_w(g, mu, self[g, mu])

    def to_records(self) -> list[dict]:
        return [
            {"g": g, "mu": list(mu.parts), "W": to_json_value(v)}
            for (g, mu), v in sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1].size, kv[0][1].parts))
        ]


def _as_partition(mu) -> Partition:
    return mu if isinstance(mu, Partition) else Partition(tuple(mu))


def c_from_w(g: int, mu: Partition, w) -> PhasedScalar:
    sign = -1 if (g + mu.length) % 2 == 0 else 1
    return PhasedScalar(sign * w, (mu.size + mu.length) % 4)


# ---------------------------------------------------------------------------
# amplitude assembly


def prefactor(g: int, mu: Partition, a: Field) -> Field:
    """``(-1)^(g+l)/|Aut mu| (a(a+1))^(l-1) prod c_{mu_i}``."""
    out = (a * (a + 1)) ** (mu.length - 1) * Fraction((-1) ** ((g + mu.length) % 2), mu.aut)
    for m in mu.parts:
        out = out * c_coefficient(m, a)
    return out


def amplitude_from_correlators(g: int, mu, corr: CorrelatorTable) -> Field:
    mu = _as_partition(mu)
    n = mu.length
    if not stable(g, n):
        return exceptional_amplitude(g, mu, corr.framing)
    a = corr.framing.a
    total = a * 0
    top = top_degree(g, n)
    for b in _b_vectors(n, top):
        val = corr.get(g, b)
        if val:
            weight = math.prod(m**bi for m, bi in zip(mu.parts, b))
            total = total + weight * val
    return prefactor(g, mu, a) * total


def _b_vectors(n: int, top: int):
    """All ``b`` in ``Z_{>=0}^n`` with ``sum b <= top``."""
    def rec(k: int, rest: int):
        if k == 0:
            yield ()
            return
        for x in range(rest + 1):
            for tail in rec(k - 1, rest - x):
                yield (x,) + tail
    yield from rec(n, top)


def exceptional_amplitude(g: int, mu, framing: Framing) -> Field:
    """``W_{0,(m)}`` and ``W_{0,(m1,m2)}`` from the conventions ``m^-2`` and ``1/(m1+m2)``."""
    mu = _as_partition(mu)
    if g != 0 or mu.length not in (1, 2):
        raise ValueError(f"(g, l) = ({g}, {mu.length}) is not an exceptional case")
    if mu.length == 1:
        integral = Fraction(1, mu.parts[0] ** 2)
    else:
        integral = Fraction(1, mu.size)
    return prefactor(0, mu, framing.a) * integral


# ---------------------------------------------------------------------------
# oracles


def oracle_genus0(b: Iterable[int]) -> Fraction:
    """``<prod tau_{b_i}>_0 = (n-3)!/prod b_i!`` when ``sum b = n - 3``."""
    b = tuple(b)
    n = len(b)
    if n < 3:
        raise ValueError("genus-0 correlators need at least three points")
    if sum(b) != n - 3:
        return Fraction(0)
    return Fraction(math.factorial(n - 3), math.prod(math.factorial(x) for x in b))


@lru_cache(maxsize=None)
def _psi_genus1(b: tuple[int, ...]) -> Fraction:
    """``<prod tau_{b_i}>_1`` by string and dilaton down to ``<tau_1>_1 = 1/24``."""
    n = len(b)
    if sum(b) != n:
        return Fraction(0)
    if b == (1,):
        return Fraction(1, 24)
    if 0 in b:
        i = b.index(0)
        rest = b[:i] + b[i + 1:]
        total = Fraction(0)
        for j, x in enumerate(rest):
            if x > 0:
                total += _psi_genus1(tuple(sorted(rest[:j] + (x - 1,) + rest[j + 1:])))
        return total
    i = b.index(1)  # all b_i >= 1 with sum n forces every b_i = 1
    rest = b[:i] + b[i + 1:]
    return (n - 1) * _psi_genus1(rest)


@lru_cache(maxsize=None)
def _psi_lambda_genus1(b: tuple[int, ...]) -> Fraction:
    """``<prod tau_{b_i} lambda_1>_1`` by string and dilaton down to ``<tau_0 lambda_1>_1 = 1/24``."""
    n = len(b)
    if sum(b) != n - 1:
        return Fraction(0)
    if b == (0,):
        return Fraction(1, 24)
    i = b.index(0)  # sum b = n - 1 forces a zero
    rest = b[:i] + b[i + 1:]
    total = Fraction(0)
    for j, x in enumerate(rest):
        if x > 0:
            total += _psi_lambda_genus1(tuple(sorted(rest[:j] + (x - 1,) + rest[j + 1:])))
    return total


def oracle_genus1(b: Iterable[int]) -> PolyA:
    """``<prod tau_{b_i} T_1(a)>_1`` with ``T_1 = -a(a+1) + (a^2+a+1) lambda_1``."""
    b = tuple(sorted(b))
    if len(b) < 1:
        raise ValueError("genus-1 correlators need at least one point")
    psi = _psi_genus1(b)
    lam = _psi_lambda_genus1(b)
    return PolyA([0, -psi, -psi]) + PolyA([lam, lam, lam])


# ---------------------------------------------------------------------------
# monomial data <-> correlators


def vandermonde_rows(m_values: Iterable[int], n_basis: int, a: Field) -> list[list]:
    """Rows ``[c_m m^(b+1)]_{b < n_basis}``: coefficients of ``x^m`` in ``phi_{b+1}``."""
    rows = []
    for m in m_values:
        c = c_coefficient(m, a)
        rows.append([c * m ** (b + 1) for b in range(n_basis)])
    return rows


def solve_square(matrix: list[list], rhs: list) -> list:
    """Gaussian elimination over a field (exact)."""
    n = len(matrix)
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col] if not isinstance(aug[col][col], int) else Fraction(1, aug[col][col])
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


class InconsistentSystem(ArithmeticError):
    """Overdetermined monomial data that no correlator table reproduces."""


@lru_cache(maxsize=None)
def readout_rows(count: int, framing: Framing) -> tuple[int, ...]:
    """The first ``count`` exponents ``m >= 1`` with ``c_m(a) != 0``.

    At ``a = -p/q`` with ``0 < p < q`` every ``c_m`` with ``q | m`` vanishes, so those
    monomials carry no information and are skipped.
    """
    rows: list[int] = []
    m = 0
    while len(rows) < count:
        m += 1
        if c_coefficient(m, framing.a):
            rows.append(m)
    return tuple(rows)


@lru_cache(maxsize=None)
def _inverse_vandermonde(n_basis: int, framing: Framing) -> tuple:
    rows = vandermonde_rows(readout_rows(n_basis, framing), n_basis, framing.a)
    cols = []
    for j in range(n_basis):
        e = [1 if i == j else 0 for i in range(n_basis)]
        cols.append(solve_square(rows, e))
    return tuple(tuple(cols[j][i] for j in range(n_basis)) for i in range(n_basis))


def solve_basis_axis(values: Mapping[int, object], n_basis: int, framing: Framing) -> list:
    """Coefficients ``alpha_b`` with ``sum_b alpha_b c_m m^(b+1) = values[m]`` for all given ``m``.

    The first ``n_basis`` rows with ``c_m != 0`` determine the solution (absent rows read as
    zero); any further rows are checked.
    """
    inv = _inverse_vandermonde(n_basis, framing)
    basis_rows = readout_rows(n_basis, framing)
    rhs = [values.get(m, 0) for m in basis_rows]
    alpha = []
    for i in range(n_basis):
        acc = 0
        for j, r in enumerate(rhs):
            if r:
                acc = acc + inv[i][j] * r
        alpha.append(acc)
    extra = [m for m in values if m not in basis_rows]
    if extra:
        rows = vandermonde_rows(extra, n_basis, framing.a)
        for m, row in zip(extra, rows):
            pred = 0
            for x, y in zip(row, alpha):
                if y:
                    pred = pred + x * y
            if pred != values[m]:
                raise InconsistentSystem(f"row x^{m} inconsistent with the basis expansion")
    return alpha


def monomial_sign(g: int, n: int, a: Field) -> Field:
    """``(-1)^(g+n) (a(a+1))^(n-1)``, the normalization of ``W_g`` against ``prod phi_{b+1}``."""
    sign = 1 if (g + n) % 2 == 0 else -1
    return sign * (a * (a + 1)) ** (n - 1)


def correlators_from_monomials(g: int, n: int, data, framing: Framing) -> dict:
    """Invert ``W_g = s_{g,n} sum <prod tau_b T_g> prod phi_{b_i+1}(x_i)`` at monomial level.

    ``data`` maps exponent tuples ``(m_1..m_n)`` (or a :class:`MultiSeries`) to the
    coefficient of ``prod x_i^{m_i}`` in ``W_g / prod(dx_i/x_i)``.
    """
    terms = data.terms if isinstance(data, MultiSeries) else dict(data)
    top = top_degree(g, n)
    nb = top + 1
    s = monomial_sign(g, n, framing.a)
    grid = {k: v for k, v in terms.items() if all(m >= 1 for m in k)}
    # peel one axis at a time: replace x_i-exponents by basis indices
    for axis in range(n):
        groups: dict = {}
        for k, v in grid.items():
            rest = k[:axis] + k[axis + 1:]
            groups.setdefault(rest, {})[k[axis]] = v
        new = {}
        for rest, column in groups.items():
            alpha = solve_basis_axis(column, nb, framing)
            for b, val in enumerate(alpha):
                if val:
                    new[rest[:axis] + (b,) + rest[axis:]] = val
        grid = new
    for b, val in grid.items():
        if sum(b) > top and val:
            raise InconsistentSystem(f"nonzero coefficient beyond the dimension bound at b = {b}")
    zero = framing.field(0)
    out = {}
    for b in _b_vectors(n, top):
        val = grid.get(b, zero)
        value = val / s if not isinstance(s, int) else Fraction(1, s) * val
        key = tuple(sorted(b))
        if key in out and out[key] != value:
            raise InconsistentSystem(f"asymmetric correlator data at b = {key}")
        out[key] = value
    return {(g, key): v for key, v in out.items()}


def monomials_from_correlators(g: int, n: int, corr: CorrelatorTable, degree: int,
                               mode: str = PER_VARIABLE) -> MultiSeries:
    """``W_g / prod(dx_i/x_i)`` as a multiseries: ``s_{g,n} sum <..> prod c_{m_i} m_i^(b_i+1)``."""
    a = corr.framing.a
    s = monomial_sign(g, n, a)
    top = top_degree(g, n)
    cs = {m: c_coefficient(m, a) for m in range(1, degree + 1)}
    terms = {}
    for m in product(range(1, degree + 1), repeat=n):
        if mode == TOTAL and sum(m) > degree:
            continue
        total = 0
        for b in _b_vectors(n, top):
            val = corr.get(g, b)
            if val:
                total = total + val * math.prod(mi ** (bi + 1) for mi, bi in zip(m, b))
        if total:
            terms[m] = s * total * math.prod((cs[mi] for mi in m), start=a * 0 + 1)
    return MultiSeries(n, degree, terms, mode)


# ---------------------------------------------------------------------------
# invariants


def correlator_violations(corr: CorrelatorTable, g: int | None = None) -> list[str]:
    """Check polynomiality, degree, reflection symmetry and the dimension bound."""
    problems = []
    for (gg, b), v in sorted(corr.entries.items()):
        if g is not None and gg != g:
            continue
        n = len(b)
        if sum(b) > top_degree(gg, n) and v:
            problems.append(f"g={gg} b={b}: nonzero beyond dimension")
        if isinstance(v, RatFnA):
            if not v.is_polynomial():
                problems.append(f"g={gg} b={b}: not a polynomial: {v}")
                continue
            if v.to_poly().degree > 2 * gg:
                problems.append(f"g={gg} b={b}: degree {v.to_poly().degree} > {2 * gg}")
            if v.reflect() != v:
                problems.append(f"g={gg} b={b}: not invariant under a -> -1-a")
    return problems
