"""Scalars times a power of the imaginary unit."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class PhasedScalar:
    """The number ``value * i**phase`` with ``value`` in the real coefficient field.

    Sums are only formed between phases of equal parity; the cut-and-join
    bookkeeping never needs anything else.
    """

    value: Any
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)

    def normalized(self) -> "PhasedScalar":
        """Representative with phase in {0, 1}, folding ``i**2 = -1`` into the value."""
        if self.phase >= 2:
            return PhasedScalar(-self.value, self.phase - 2)
        return self

    def is_zero(self) -> bool:
        return not self.value

    def __mul__(self, other):
        if isinstance(other, PhasedScalar):
            total = self.phase + other.phase
            value = self.value * other.value
            return PhasedScalar(value, total % 4)
        return PhasedScalar(self.value * other, self.phase)

    __rmul__ = __mul__

    def __neg__(self) -> "PhasedScalar":
        return PhasedScalar(-self.value, self.phase)

    def __add__(self, other: "PhasedScalar") -> "PhasedScalar":
        if not isinstance(other, PhasedScalar):
            return NotImplemented
        if not other.value:
            return self
        if not self.value:
            return other
        diff = (other.phase - self.phase) % 4
        if diff == 0:
            return PhasedScalar(self.value + other.value, self.phase)
        if diff == 2:
            return PhasedScalar(self.value - other.value, self.phase)
        raise ValueError("cannot add scalars whose phases differ by an odd power of i")

    def __sub__(self, other: "PhasedScalar") -> "PhasedScalar":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhasedScalar):
            return NotImplemented
        if not self.value and not other.value:
            return True
        a, b = self.normalized(), other.normalized()
        return a.phase == b.phase and a.value == b.value

    def __hash__(self) -> int:
        if not self.value:
            return hash(0)
        n = self.normalized()
        return hash((n.value, n.phase))

    def __repr__(self) -> str:
        return f"PhasedScalar({self.value}, i^{self.phase})"
