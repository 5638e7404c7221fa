"""Dense truncated Laurent series in one variable.

A series stores the coefficients of exponents ``min_exp, min_exp + 1, ...`` together
with ``trunc``: every coefficient below ``trunc`` is known exactly, nothing at or
above it is.  ``trunc`` may be ``math.inf`` for an exact (finite) Laurent
polynomial.  Every operation computes the truncation order it can guarantee; an
operation that would need unknown coefficients raises :class:`PrecisionError`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

INF = math.inf


class PrecisionError(ArithmeticError):
    """A requested coefficient lies at or beyond the known truncation order."""


def _min(*xs):
    return min(xs)


class LaurentSeries:
    """Truncated Laurent series ``sum_k c_k var^k + O(var^trunc)``."""

    __slots__ = ("var", "min_exp", "coeffs", "trunc")

    def __init__(self, var: str, min_exp: int, coeffs: Iterable, trunc=INF):
        coeffs = list(coeffs)
        if trunc != INF:
            trunc = int(trunc)
            keep = max(0, trunc - min_exp)
            del coeffs[keep:]
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        end = len(coeffs)
        while end > start and not coeffs[end - 1]:
            end -= 1
        coeffs = coeffs[start:end]
        if coeffs:
            min_exp += start
        else:
            min_exp = trunc if trunc != INF else 0
        self.var = var
        self.min_exp = min_exp
        self.coeffs = tuple(coeffs)
        self.trunc = trunc

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, var: str, trunc=INF) -> "LaurentSeries":
        return cls(var, 0 if trunc == INF else trunc, (), trunc)

    @classmethod
    def constant(cls, var: str, c, trunc=INF) -> "LaurentSeries":
        return cls(var, 0, (c,), trunc)

    @classmethod
    def monomial(cls, var: str, exponent: int, c=1, trunc=INF) -> "LaurentSeries":
        return cls(var, exponent, (c,), trunc)

    @classmethod
    def from_dict(cls, var: str, terms: dict, trunc=INF) -> "LaurentSeries":
        if not terms:
            return cls.zero(var, trunc)
        lo, hi = min(terms), max(terms)
        return cls(var, lo, [terms.get(k, 0) for k in range(lo, hi + 1)], trunc)

    # basic queries ----------------------------------------------------------

    @property
    def valuation(self):
        """Exponent of the leading term (``trunc`` for a series zero to truncation)."""
        return self.min_exp if self.coeffs else self.trunc

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def is_exact(self) -> bool:
        return self.trunc == INF

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def coefficient(self, e: int):
        if e >= self.trunc:
            raise PrecisionError(f"coefficient of {self.var}^{e} unknown (truncation {self.trunc})")
        k = e - self.min_exp
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    __getitem__ = coefficient

    def terms(self) -> Iterable[tuple[int, Any]]:
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.min_exp + k, c

    def truncate(self, order) -> "LaurentSeries":
        return LaurentSeries(self.var, self.min_exp, self.coeffs, _min(self.trunc, order))

    def map(self, fn: Callable) -> "LaurentSeries":
        """Apply ``fn`` coefficientwise (e.g. specialize ``a``)."""
        return LaurentSeries(self.var, self.min_exp, [fn(c) for c in self.coeffs], self.trunc)

    def rename(self, var: str) -> "LaurentSeries":
        return LaurentSeries(var, self.min_exp, self.coeffs, self.trunc)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``var**k``."""
        return LaurentSeries(self.var, self.min_exp + k, self.coeffs, self.trunc + k)

    def _check(self, other: "LaurentSeries") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            self._check(other)
            return other
        return LaurentSeries.constant(self.var, other)

    # ring operations ----------------------------------------------------------

    def __add__(self, other) -> "LaurentSeries":
        other = self._lift(other)
        trunc = _min(self.trunc, other.trunc)
        if not other.coeffs:
            return self.truncate(trunc)
        if not self.coeffs:
            return other.truncate(trunc)
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        if trunc != INF:
            hi = min(hi, trunc - 1)
        out = [0] * (hi - lo + 1) if hi >= lo else []
        for k, c in enumerate(self.coeffs):
            e = self.min_exp + k - lo
            if e < len(out):
                out[e] = c
        for k, c in enumerate(other.coeffs):
            e = other.min_exp + k - lo
            if e < len(out):
                out[e] = out[e] + c
        return LaurentSeries(self.var, lo, out, trunc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.var, self.min_exp, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other) -> "LaurentSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentSeries":
        return self._lift(other) + (-self)

    def scale(self, c) -> "LaurentSeries":
        if not c:
            return LaurentSeries.zero(self.var, self.trunc)
        return LaurentSeries(self.var, self.min_exp, [c * x for x in self.coeffs], self.trunc)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._check(other)
        vf, vg = self.valuation, other.valuation
        trunc = _min(self.trunc + vg, other.trunc + vf)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(self.var, trunc)
        lo = vf + vg
        f, g = self.coeffs, other.coeffs
        n = len(f) + len(g) - 1
        if trunc != INF:
            n = min(n, trunc - lo)
        if n <= 0:
            return LaurentSeries.zero(self.var, trunc)
        out = [0] * n
        for i, fi in enumerate(f):
            if i >= n:
                break
            if not fi:
                continue
            lim = min(len(g), n - i)
            for j in range(lim):
                gj = g[j]
                if gj:
                    out[i + j] = out[i + j] + fi * gj
        return LaurentSeries(self.var, lo, out, trunc)

    def __rmul__(self, other) -> "LaurentSeries":
        return self.scale(other)

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse of a series with known nonzero leading term."""
        if not self.coeffs:
            raise PrecisionError("cannot invert a series that is zero to its truncation order")
        v = self.min_exp
        c0 = self.coeffs[0]
        inv0 = 1 / c0 if not isinstance(c0, int) else Fraction(1, c0)
        if self.trunc == INF:
            if len(self.coeffs) == 1:
                return LaurentSeries(self.var, -v, (inv0,), INF)
            raise PrecisionError("inverse of an exact non-monomial series needs a truncation order")
        rel = self.trunc - v
        f = self.coeffs
        out = [inv0]
        for k in range(1, rel):
            acc = 0
            for i in range(1, min(k, len(f) - 1) + 1):
                fi = f[i]
                if fi:
                    acc = acc + fi * out[k - i]
            out.append(-acc * inv0)
        return LaurentSeries(self.var, -v, out, -v + rel)

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        inv = 1 / other if not isinstance(other, int) else Fraction(1, other)
        return self.scale(inv)

    def __rtruediv__(self, other) -> "LaurentSeries":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentSeries.constant(self.var, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus ---------------------------------------------------------------

    def derivative(self) -> "LaurentSeries":
        out = [(self.min_exp + k) * c for k, c in enumerate(self.coeffs)]
        return LaurentSeries(self.var, self.min_exp - 1, out, self.trunc - 1)

    def integrate(self) -> "LaurentSeries":
        """Antiderivative with zero constant term; the residue must vanish."""
        if self.trunc <= -1:
            raise PrecisionError("residue unknown, cannot integrate")
        if self.coefficient(-1):
            raise ValueError("cannot integrate a series with nonzero residue")
        terms = {}
        for e, c in self.terms():
            terms[e + 1] = c * Fraction(1, e + 1)
        return LaurentSeries.from_dict(self.var, terms, self.trunc + 1)

    def euler(self) -> "LaurentSeries":
        """The operator ``var * d/dvar``."""
        out = [(self.min_exp + k) * c for k, c in enumerate(self.coeffs)]
        return LaurentSeries(self.var, self.min_exp, out, self.trunc)

    # parity and principal parts ---------------------------------------------

    def _filter(self, keep: Callable[[int], bool], trunc) -> "LaurentSeries":
        out = [c if keep(self.min_exp + k) else 0 for k, c in enumerate(self.coeffs)]
        return LaurentSeries(self.var, self.min_exp, out, trunc)

    def odd_part(self) -> "LaurentSeries":
        return self._filter(lambda e: e % 2 != 0, self.trunc)

    def even_part(self) -> "LaurentSeries":
        return self._filter(lambda e: e % 2 == 0, self.trunc)

    def principal_part(self, cutoff: int = -1) -> "LaurentSeries":
        """Exact series of the terms with exponent at most ``cutoff``."""
        if self.trunc <= cutoff:
            raise PrecisionError(f"principal part to {cutoff} needs truncation beyond {self.trunc}")
        return self._filter(lambda e: e <= cutoff, INF)

    def negate_variable(self) -> "LaurentSeries":
        """``f(-x)``."""
        return self.scale_variable(-1)

    def scale_variable(self, c) -> "LaurentSeries":
        """``f(c x)`` for a nonzero scalar ``c``."""
        out = []
        for k, coeff in enumerate(self.coeffs):
            e = self.min_exp + k
            out.append(coeff * _power(c, e) if coeff else 0)
        return LaurentSeries(self.var, self.min_exp, out, self.trunc)

    # composition and inversion ------------------------------------------------

    def compose(self, g: "LaurentSeries") -> "LaurentSeries":
        """Substitute the series ``g`` for the variable of ``self``.

        An infinite ``self`` needs ``g`` of positive valuation; a finite Laurent
        polynomial can be evaluated at any ``g`` with known leading term.
        """
        if not g.coeffs:
            raise PrecisionError("cannot substitute a series that is zero to truncation")
        vg = g.valuation
        if self.trunc != INF and vg < 1:
            raise ValueError("substituting into an infinite series needs positive valuation")
        exps = [e for e, _ in self.terms()]
        trunc = INF
        if self.trunc != INF:
            trunc = self.trunc * vg
        rel = g.trunc - vg
        for e in exps:
            if e != 0:
                trunc = _min(trunc, e * vg + rel)
        result = LaurentSeries.zero(g.var, trunc)
        if not exps:
            return result
        pos = [e for e in exps if e > 0]
        neg = [e for e in exps if e < 0]
        if 0 in exps:
            result = result + LaurentSeries.constant(g.var, self.coefficient(0), trunc)
        # truncating early is only safe while powers raise the valuation
        keep = lambda s: s
        cap = (lambda s: s.truncate(trunc)) if trunc != INF and vg >= 1 else keep
        cap_inv = (lambda s: s.truncate(trunc)) if trunc != INF and vg <= -1 else keep
        if pos:
            gg = cap(g)
            pw = gg
            for e in range(1, max(pos) + 1):
                if e > 1:
                    pw = cap(pw * gg)
                c = self.coefficient(e)
                if c:
                    result = result + pw.scale(c)
        if neg:
            ginv = g.inverse() if g.trunc != INF or len(g.coeffs) == 1 else None
            if ginv is None:
                raise PrecisionError("negative powers of an exact non-monomial series need truncation")
            ginv = cap_inv(ginv)
            pw = ginv
            for e in range(-1, min(neg) - 1, -1):
                if e < -1:
                    pw = cap_inv(pw * ginv)
                c = self.coefficient(e)
                if c:
                    result = result + pw.scale(c)
        return result.truncate(trunc)

    def reversion(self, order=None, var: str | None = None) -> "LaurentSeries":
        """Compositional inverse by Lagrange inversion.

        With ``f(u) = c_1 u + ...`` the inverse ``u(x)`` has
        ``[x^n] u = (1/n) [u^{n-1}] (u/f(u))^n``.
        """
        if not self.coeffs or self.min_exp != 1:
            raise ValueError("reversion needs zero constant term and a nonzero linear coefficient")
        n_max = self.trunc if order is None else _min(self.trunc, order)
        if n_max == INF:
            raise PrecisionError("reversion of an exact series needs an explicit order")
        n_max = int(n_max)
        h = self.shift(-1).truncate(n_max - 1).inverse()
        terms = {}
        pw = LaurentSeries.constant(self.var, 1, n_max - 1)
        for n in range(1, n_max):
            pw = pw * h
            c = pw.coefficient(n - 1)
            if c:
                terms[n] = c * Fraction(1, n)
        return LaurentSeries.from_dict(var or self.var, terms, n_max)

    # transcendental operations on unit series -----------------------------------

    def _unit_check(self, what: str) -> None:
        if self.min_exp < 0 or self.coefficient(0) != 1:
            raise ValueError(f"{what} needs valuation 0 and constant term 1")
        if self.trunc == INF and len(self.coeffs) > 1:
            raise PrecisionError(f"{what} of an exact non-constant series needs a truncation order")

    def log(self) -> "LaurentSeries":
        self._unit_check("log")
        if self.trunc == INF:
            return LaurentSeries.zero(self.var)
        return (self.derivative() * self.inverse()).integrate()

    def power(self, r) -> "LaurentSeries":
        """``f**r`` for a unit series ``f = 1 + ...`` and any field element ``r``."""
        self._unit_check("power")
        if self.trunc == INF:
            return LaurentSeries.constant(self.var, 1)
        n = self.trunc
        f = [self.coefficient(k) for k in range(n)]
        out = [1]
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if f[j]:
                    acc = acc + ((r + 1) * j - k) * f[j] * out[k - j]
            out.append(acc * Fraction(1, k))
        return LaurentSeries(self.var, 0, out, n)

    def exp(self) -> "LaurentSeries":
        if self.coeffs and self.min_exp < 1:
            raise ValueError("exp needs a series without constant term")
        if self.trunc == INF:
            if self.coeffs:
                raise PrecisionError("exp of an exact nonzero series needs a truncation order")
            return LaurentSeries.constant(self.var, 1)
        n = self.trunc
        g = [self.coefficient(k) if k >= 1 else 0 for k in range(n)]
        out = [1]
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if g[j]:
                    acc = acc + j * g[j] * out[k - j]
            out.append(acc * Fraction(1, k))
        return LaurentSeries(self.var, 0, out, n)

    # comparison and display ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.trunc == other.trunc
            and self.min_exp == other.min_exp
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.var, self.min_exp, self.coeffs, self.trunc))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality of all coefficients known in both series."""
        self._check(other)
        upto = _min(self.trunc, other.trunc)
        diff = self.truncate(upto) - other.truncate(upto)
        return diff.is_zero()

    def __repr__(self) -> str:
        parts = [f"({c})*{self.var}^{e}" for e, c in self.terms()]
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.trunc == INF else f" + O({self.var}^{self.trunc})"
        return body + tail


def _power(c, e: int):
    if e >= 0:
        return c**e
    return 1 / (c ** (-e)) if not isinstance(c, int) else Fraction(1, c ** (-e))


def polynomial(var: str, coeffs: Sequence) -> LaurentSeries:
    """Exact polynomial with ascending coefficients."""
    return LaurentSeries(var, 0, coeffs, INF)


def series_mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return f * g


def series_reversion(f: LaurentSeries, order=None) -> LaurentSeries:
    return f.reversion(order)


def series_log(f: LaurentSeries) -> LaurentSeries:
    return f.log()


def series_exp(f: LaurentSeries) -> LaurentSeries:
    return f.exp()


def odd_part(f: LaurentSeries) -> LaurentSeries:
    return f.odd_part()


def even_part(f: LaurentSeries) -> LaurentSeries:
    return f.even_part()


def principal_part(f: LaurentSeries, cutoff: int = -1) -> LaurentSeries:
    return f.principal_part(cutoff)
