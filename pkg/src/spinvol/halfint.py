"""Half-integer spin labels stored as twice-value integers.

Every quantum number in the package (j's, projections m, lattice labels)
is a :class:`HalfInt`.  Storing ``twice = 2j`` keeps parity checks exact:
``j + m`` is an integer iff ``j.twice + m.twice`` is even.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = ["HalfInt", "as_halfint"]


@dataclass(frozen=True, slots=True, order=True)
class HalfInt:
    """A half-integer ``twice / 2``.  The raw constructor takes the
    twice-value; use :meth:`from_value` or :meth:`parse` for j-values."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int):
            raise DomainError(f"twice-value must be an integer, got {self.twice!r}")

    @classmethod
    def from_value(cls, value) -> "HalfInt":
        """Build from a j-value: int, float (n.0 or n.5), Fraction or HalfInt."""
        return as_halfint(value)

    @classmethod
    def parse(cls, token: str) -> "HalfInt":
        """Parse CLI-style tokens: '2', '3/2', '1.5', '-1/2'."""
        token = token.strip()
        try:
            if "/" in token:
                num, den = token.split("/")
                frac = Fraction(int(num), int(den))
            else:
                frac = Fraction(token)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse half-integer from {token!r}") from exc
        return as_halfint(frac)

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2.0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice})"


def as_halfint(x) -> HalfInt:
    """Coerce ``x`` to a HalfInt.  Accepts HalfInt, int (j-value), Fraction,
    float equal to n/2, and strings like '3/2'."""
    if isinstance(x, HalfInt):
        return x
    if isinstance(x, bool):
        raise DomainError("bool is not a spin value")
    if isinstance(x, int):
        return HalfInt(2 * x)
    if isinstance(x, Fraction):
        twice = 2 * x
        if twice.denominator != 1:
            raise DomainError(f"{x} is not a half-integer")
        return HalfInt(int(twice))
    if isinstance(x, float):
        twice = 2 * x
        if twice != int(twice):
            raise DomainError(f"{x} is not a half-integer")
        return HalfInt(int(twice))
    if isinstance(x, str):
        return HalfInt.parse(x)
    raise DomainError(f"cannot interpret {x!r} as a half-integer")
