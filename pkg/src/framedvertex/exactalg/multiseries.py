"""Sparse multivariate power series with a degree bound."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

TOTAL = "total"
PER_VARIABLE = "per"


class MultiSeries:
    """Power series in ``x_1..x_n`` truncated by total or per-variable degree.

    Coefficients are stored in a dict keyed by exponent tuples; zero entries are
    never stored.  Every monomial inside the bound is known exactly.
    """

    __slots__ = ("nvars", "bound", "mode", "terms")

    def __init__(self, nvars: int, bound: int, terms: Mapping | Iterable = (), mode: str = TOTAL):
        if mode not in (TOTAL, PER_VARIABLE):
            raise ValueError(f"unknown bound mode {mode!r}")
        self.nvars = nvars
        self.bound = bound
        self.mode = mode
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nvars or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            if c and self.within(exps):
                clean[exps] = c
        self.terms = clean

    def within(self, exps: tuple) -> bool:
        if self.mode == TOTAL:
            return sum(exps) <= self.bound
        return max(exps, default=0) <= self.bound

    @classmethod
    def constant(cls, nvars: int, bound: int, c, mode: str = TOTAL) -> "MultiSeries":
        return cls(nvars, bound, {(0,) * nvars: c}, mode)

    @classmethod
    def from_univariate(cls, coeffs: Mapping[int, object], nvars: int, index: int, bound: int,
                        mode: str = TOTAL) -> "MultiSeries":
        """Embed ``sum_k c_k x^k`` as a series in variable ``index``."""
        terms = {}
        for k, c in coeffs.items():
            e = [0] * nvars
            e[index] = k
            terms[tuple(e)] = c
        return cls(nvars, bound, terms, mode)

    def like(self, terms) -> "MultiSeries":
        return MultiSeries(self.nvars, self.bound, terms, self.mode)

    def _compatible(self, other: "MultiSeries") -> None:
        if (self.nvars, self.bound, self.mode) != (other.nvars, other.bound, other.mode):
            raise ValueError("multiseries with different shapes")

    def coefficient(self, exps: tuple):
        exps = tuple(exps)
        if not self.within(exps):
            raise ValueError(f"monomial {exps} outside the degree bound")
        return self.terms.get(exps, 0)

    def is_zero(self) -> bool:
        return not self.terms

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self.like(out)

    def __neg__(self) -> "MultiSeries":
        return self.like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def scale(self, c) -> "MultiSeries":
        return self.like({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other) -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        self._compatible(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if self.within(e):
                    out[e] = out.get(e, 0) + c1 * c2
        return self.like(out)

    __rmul__ = scale

    def map(self, fn: Callable) -> "MultiSeries":
        return self.like({k: fn(c) for k, c in self.terms.items()})

    def euler(self, i: int) -> "MultiSeries":
        """``x_i d/dx_i``."""
        return self.like({k: k[i] * c for k, c in self.terms.items()})

    def log(self) -> "MultiSeries":
        """Logarithm of a series with constant term 1 (total-degree mode)."""
        zero = (0,) * self.nvars
        if self.terms.get(zero, 0) != 1:
            raise ValueError("log needs constant term 1")
        if self.mode != TOTAL:
            raise ValueError("log is only implemented for total-degree truncation")
        f = self.like({k: c for k, c in self.terms.items() if k != zero})
        result = self.like({})
        power = f
        k = 1
        while not power.is_zero() and k <= self.bound:
            result = result + power.scale(Fraction((-1) ** (k + 1), k))
            power = power * f
            k += 1
        return result

    def restrict(self, bound: int) -> "MultiSeries":
        return MultiSeries(self.nvars, bound, self.terms, self.mode)

    def permute(self, perm: tuple) -> "MultiSeries":
        """Relabel variables: variable ``i`` becomes variable ``perm[i]``."""
        out = {}
        for k, c in self.terms.items():
            e = [0] * self.nvars
            for i, p in enumerate(perm):
                e[p] = k[i]
            out[tuple(e)] = c
        return self.like(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.nvars, self.bound, self.mode) == (other.nvars, other.bound, other.mode) and \
            self.terms == other.terms

    def __repr__(self) -> str:
        return f"MultiSeries(n={self.nvars}, {self.mode}<={self.bound}, {len(self.terms)} terms)"
