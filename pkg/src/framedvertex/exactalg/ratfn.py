"""Rationals, polynomials in the framing parameter ``a`` and rational functions of ``a``.

Polynomial arithmetic is delegated to FLINT's ``fmpq_poly``; this module adds the
canonical-form discipline (coprime, monic denominator) and the conversions the
rest of the package relies on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

import flint

Rational = Fraction
Scalar = Union[int, Fraction]

_P = flint.fmpq_poly


def format_rational(q) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when ``q = 1``)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _fmpq(q) -> flint.fmpq:
    if isinstance(q, flint.fmpq):
        return q
    q = Fraction(q)
    return flint.fmpq(q.numerator, q.denominator)


def _to_fraction(q: flint.fmpq) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def _poly(coeffs: Iterable) -> flint.fmpq_poly:
    return _P([_fmpq(c) for c in coeffs])


def _is_one(p: flint.fmpq_poly) -> bool:
    return p.degree() == 0 and p[0] == 1


def _poly_str(p: flint.fmpq_poly, var: str = "a") -> str:
    terms = []
    for k in range(p.degree(), -1, -1):
        c = _to_fraction(p[k])
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        body = "" if (mag == 1 and k > 0) else format_rational(mag)
        if k == 1:
            mono = var
        elif k > 1:
            mono = f"{var}^{k}"
        else:
            mono = ""
        term = body + ("*" if body and mono else "") + mono
        terms.append((sign, term))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in terms[1:]:
        out += f" {sign} {term}"
    return out


class PolyA:
    """Polynomial in ``a`` with rational coefficients (ascending powers)."""

    __slots__ = ("_p",)

    def __init__(self, coeffs: Sequence = ()):
        if isinstance(coeffs, _P):
            self._p = coeffs
        else:
            self._p = _poly(coeffs)

    @classmethod
    def variable(cls) -> "PolyA":
        return cls(_P([0, 1]))

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(_to_fraction(c) for c in self._p.coeffs())

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return self._p.degree()

    def is_zero(self) -> bool:
        return self._p.degree() < 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _coerce(self, other) -> flint.fmpq_poly:
        if isinstance(other, PolyA):
            return other._p
        if isinstance(other, (int, Fraction)):
            return _P([_fmpq(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyA(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyA(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyA(o - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyA(self._p * o)

    __rmul__ = __mul__

    def __neg__(self) -> "PolyA":
        return PolyA(-self._p)

    def __pow__(self, k: int) -> "PolyA":
        return PolyA(self._p**k)

    def __divmod__(self, other: "PolyA"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = divmod(self._p, other._p)
        return PolyA(q), PolyA(r)

    def gcd(self, other: "PolyA") -> "PolyA":
        """Monic gcd (zero if both are zero)."""
        return PolyA(self._p.gcd(other._p))

    def __call__(self, value):
        return _to_fraction(self._p(_fmpq(value)))

    def derivative(self) -> "PolyA":
        return PolyA(self._p.derivative())

    def reflect(self) -> "PolyA":
        """Substitute ``a -> -1 - a``."""
        return PolyA(self._p(_P([-1, -1])))

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, RatFnA):
                return other == self
            return NotImplemented
        return self._p == o

    def __hash__(self) -> int:
        cs = self.coefficients
        if len(cs) <= 1:
            return hash(cs[0] if cs else Fraction(0))
        return hash(("PolyA",) + cs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "PolyA":
        return cls([parse_rational(s) for s in data])

    def __repr__(self) -> str:
        return f"PolyA({_poly_str(self._p)})"

    def __str__(self) -> str:
        return _poly_str(self._p)


class RatFnA:
    """Element of Q(a) held as ``num/den`` with gcd 1 and monic ``den``."""

    __slots__ = ("_n", "_d")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFnA) or isinstance(den, RatFnA):
            q = RatFnA._coerce(num) / RatFnA._coerce(den)
            self._n, self._d = q._n, q._d
            return
        n = _as_fmpq_poly(num)
        d = _as_fmpq_poly(den)
        if d.degree() < 0:
            raise ZeroDivisionError("rational function with zero denominator")
        self._n, self._d = _canonical(n, d)

    @classmethod
    def _raw(cls, n: flint.fmpq_poly, d: flint.fmpq_poly) -> "RatFnA":
        obj = object.__new__(cls)
        obj._n = n
        obj._d = d
        return obj

    @classmethod
    def variable(cls) -> "RatFnA":
        """The framing parameter ``a`` itself."""
        return cls._raw(_P([0, 1]), _P([1]))

    @property
    def num(self) -> PolyA:
        return PolyA(self._n)

    @property
    def den(self) -> PolyA:
        return PolyA(self._d)

    def is_polynomial(self) -> bool:
        return _is_one(self._d)

    def to_poly(self) -> PolyA:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial in a")
        return PolyA(self._n)

    def is_zero(self) -> bool:
        return self._n.degree() < 0

    def __bool__(self) -> bool:
        return self._n.degree() >= 0

    # arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFnA):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFnA._raw(_P([_fmpq(other)]), _P([1]))
        if isinstance(other, PolyA):
            return RatFnA._raw(other._p, _P([1]))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d1, d2 = self._d, o._d
        if _is_one(d1) and _is_one(d2):
            return RatFnA._raw(self._n + o._n, d1)
        if d1 == d2:
            return RatFnA._raw(*_canonical(self._n + o._n, d1))
        g = d1.gcd(d2)
        if _is_one(g):
            return RatFnA._raw(self._n * d2 + o._n * d1, d1 * d2)
        d1g, d2g = d1 / g, d2 / g
        return RatFnA._raw(*_canonical(self._n * d2g + o._n * d1g, d1g * d2))

    __radd__ = __add__

    def __neg__(self) -> "RatFnA":
        return RatFnA._raw(-self._n, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n1, d1, n2, d2 = self._n, self._d, o._n, o._d
        if n1.degree() < 0 or n2.degree() < 0:
            return RatFnA._raw(_P([]), _P([1]))
        if _is_one(d1) and _is_one(d2):
            return RatFnA._raw(n1 * n2, d1)
        g1 = n1.gcd(d2)
        g2 = n2.gcd(d1)
        if not _is_one(g1):
            n1, d2 = n1 / g1, d2 / g1
        if not _is_one(g2):
            n2, d1 = n2 / g2, d1 / g2
        return RatFnA._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFnA":
        if self._n.degree() < 0:
            raise ZeroDivisionError("inverse of zero")
        lc = self._n[self._n.degree()]
        return RatFnA._raw(self._d / lc, self._n / lc)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "RatFnA":
        if k >= 0:
            return RatFnA._raw(self._n**k, self._d**k)
        return self.inverse() ** (-k)

    # calculus and substitutions ----------------------------------------

    def derivative(self) -> "RatFnA":
        """d/da."""
        n, d = self._n, self._d
        if _is_one(d):
            return RatFnA._raw(n.derivative(), d)
        return RatFnA._raw(*_canonical(n.derivative() * d - n * d.derivative(), d * d))

    def reflect(self) -> "RatFnA":
        """Substitute ``a -> -1 - a``."""
        s = _P([-1, -1])
        return RatFnA._raw(*_canonical(self._n(s), self._d(s)))

    def evaluate(self, value) -> Fraction:
        """Specialize ``a`` to a rational value."""
        v = _fmpq(value)
        den = self._d(v)
        if den == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at a = {value}")
        return _to_fraction(self._n(v) / den)

    # comparison and display ----------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self) -> int:
        if _is_one(self._d) and self._n.degree() <= 0:
            return hash(_to_fraction(self._n[0]))
        return hash((tuple(map(str, self._n.coeffs())), tuple(map(str, self._d.coeffs()))))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFnA":
        return cls(PolyA.from_json(data["num"]), PolyA.from_json(data["den"]))

    def __str__(self) -> str:
        if _is_one(self._d):
            return _poly_str(self._n)
        return f"({_poly_str(self._n)})/({_poly_str(self._d)})"

    def __repr__(self) -> str:
        return f"RatFnA({self})"


def _as_fmpq_poly(x) -> flint.fmpq_poly:
    if isinstance(x, PolyA):
        return x._p
    if isinstance(x, _P):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return _P([_fmpq(x)])
    return _poly(x)


def _canonical(n: flint.fmpq_poly, d: flint.fmpq_poly):
    if n.degree() < 0:
        return _P([]), _P([1])
    g = n.gcd(d)
    if not _is_one(g):
        n, d = n / g, d / g
    lc = d[d.degree()]
    if lc != 1:
        n, d = n / lc, d / lc
    return n, d


def ratfn_normalize(num, den) -> RatFnA:
    """Canonical form of ``num/den``: coprime parts, monic denominator."""
    return RatFnA(num, den)


def to_json_value(x) -> dict:
    """Encode a field element (rational or rational function) as num/den arrays."""
    if isinstance(x, RatFnA):
        return x.to_json()
    if isinstance(x, PolyA):
        return {"num": x.to_json(), "den": ["1"]}
    q = Fraction(x)
    num = [] if q == 0 else [format_rational(q)]
    return {"num": num, "den": ["1"]}


def coefficient_array(x) -> list[str]:
    """Ascending coefficient array of a polynomial value (rationals are constants)."""
    if isinstance(x, RatFnA):
        return x.to_poly().to_json()
    if isinstance(x, PolyA):
        return x.to_json()
    q = Fraction(x)
    return [] if q == 0 else [format_rational(q)]
