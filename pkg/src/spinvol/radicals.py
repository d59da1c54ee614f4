"""Exact arithmetic for numbers of the form sign * sqrt(rational).

All 3j/6j symbols and Heron-formula matrix elements are of this shape, so
:class:`ExactRadical` is closed under the products and quotients the
package needs.  :class:`RadicalSum` holds sums of such numbers in the
square-free normal form ``sum_i c_i * sqrt(f_i)`` with distinct square-free
``f_i``; since square roots of distinct square-free integers are linearly
independent over the rationals, a RadicalSum is zero iff it has no terms.
That linear independence is the exactness backbone of the orthogonality
checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = ["ExactRadical", "RadicalSum", "squarefree_decompose"]


def _primes_up_to(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]

# Radicands here come from factorials of small arguments, so their prime
# factors stay far below this bound.
_TRIAL_BOUND = 20_000
_PRIMES = _primes_up_to(_TRIAL_BOUND)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` square-free.

    Exact for any n whose prime factors are below the trial bound (true for
    every factorial-derived radicand in this package); a residual beyond the
    bound is square-checked and otherwise taken square-free.
    """
    if n <= 0:
        raise DomainError(f"squarefree_decompose needs a positive integer, got {n}")
    s = 1
    f = 1
    for p in _PRIMES:
        if p * p > n:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        else:
            f *= n
    return s, f


@dataclass(frozen=True, slots=True)
class ExactRadical:
    """The number ``sign * sqrt(radicand)`` with a non-negative rational
    radicand.  Equal iff signs and normalized radicands are equal."""

    sign: int
    radicand: Fraction

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.radicand < 0:
            raise DomainError("radicand must be non-negative")
        if (self.sign == 0) != (self.radicand == 0):
            raise DomainError("sign is 0 iff radicand is 0")

    @classmethod
    def zero(cls) -> "ExactRadical":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "ExactRadical":
        return cls(1, Fraction(1))

    @classmethod
    def from_rational(cls, r) -> "ExactRadical":
        """Embed a rational: r -> sign(r) * sqrt(r^2)."""
        r = Fraction(r)
        if r == 0:
            return cls.zero()
        return cls(1 if r > 0 else -1, r * r)

    @classmethod
    def sqrt_of(cls, r) -> "ExactRadical":
        """The positive square root of a non-negative rational."""
        r = Fraction(r)
        if r < 0:
            raise DomainError("cannot take the real square root of a negative rational")
        return cls(1 if r > 0 else 0, r)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other):
        if isinstance(other, ExactRadical):
            return ExactRadical(self.sign * other.sign, self.radicand * other.radicand)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, r) -> "ExactRadical":
        """Multiply by a rational: fold c into the radicand as c^2."""
        r = Fraction(r)
        if r == 0 or self.sign == 0:
            return ExactRadical.zero()
        sign = self.sign * (1 if r > 0 else -1)
        return ExactRadical(sign, self.radicand * r * r)

    def __truediv__(self, other):
        if isinstance(other, ExactRadical):
            if other.sign == 0:
                raise ZeroDivisionError("division by zero ExactRadical")
            if self.sign == 0:
                return ExactRadical.zero()
            return ExactRadical(self.sign * other.sign, self.radicand / other.radicand)
        return self.scale(1 / Fraction(other))

    def __neg__(self) -> "ExactRadical":
        if self.sign == 0:
            return self
        return ExactRadical(-self.sign, self.radicand)

    def squared(self) -> Fraction:
        return self.radicand

    def as_rational(self) -> Fraction | None:
        """The exact rational value, or None if the value is irrational."""
        sn, fn = squarefree_decompose(self.radicand.numerator) if self.radicand else (0, 1)
        if self.sign == 0:
            return Fraction(0)
        sd, fd = squarefree_decompose(self.radicand.denominator)
        if fn == 1 and fd == 1:
            return Fraction(self.sign * sn, sd)
        return None

    def factored(self) -> tuple[Fraction, int]:
        """Write the value as ``coeff * sqrt(f)`` with square-free integer f."""
        if self.sign == 0:
            return Fraction(0), 1
        p, q = self.radicand.numerator, self.radicand.denominator
        s, f = squarefree_decompose(p * q)
        return Fraction(self.sign * s, q), f

    def __float__(self) -> float:
        return self.sign * math.sqrt(float(self.radicand))

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        coeff, f = self.factored()
        if f == 1:
            return str(coeff)
        if coeff == 1:
            return f"sqrt({f})"
        if coeff == -1:
            return f"-sqrt({f})"
        if coeff.numerator in (1, -1):
            sign = "-" if coeff < 0 else ""
            return f"{sign}sqrt({f})/{coeff.denominator}"
        return f"{coeff}*sqrt({f})"

    def __repr__(self) -> str:
        s = "+" if self.sign > 0 else "-" if self.sign < 0 else "0"
        return f"ExactRadical({s}, {self.radicand})"


@dataclass(frozen=True, slots=True)
class RadicalSum:
    """Sum of rational multiples of square roots of distinct square-free
    integers, kept in normal form.  ``terms`` maps f -> coefficient."""

    terms: tuple[tuple[int, Fraction], ...]

    @classmethod
    def zero(cls) -> "RadicalSum":
        return cls(())

    @classmethod
    def from_radical(cls, r: ExactRadical) -> "RadicalSum":
        if r.sign == 0:
            return cls.zero()
        coeff, f = r.factored()
        return cls(((f, coeff),))

    @classmethod
    def from_rational(cls, r) -> "RadicalSum":
        r = Fraction(r)
        if r == 0:
            return cls.zero()
        return cls(((1, r),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "RadicalSum") -> "RadicalSum":
        merged = dict(self.terms)
        for f, c in other.terms:
            c2 = merged.get(f, Fraction(0)) + c
            if c2 == 0:
                merged.pop(f, None)
            else:
                merged[f] = c2
        return RadicalSum(tuple(sorted(merged.items())))

    def __sub__(self, other: "RadicalSum") -> "RadicalSum":
        return self + (-other)

    def __neg__(self) -> "RadicalSum":
        return RadicalSum(tuple((f, -c) for f, c in self.terms))

    def as_rational(self) -> Fraction | None:
        """The exact rational value, or None if irrational terms remain."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][0] == 1:
            return self.terms[0][1]
        return None

    def __float__(self) -> float:
        return math.fsum(float(c) * math.sqrt(f) for f, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for f, c in self.terms:
            parts.append(str(c) if f == 1 else f"{c}*sqrt({f})")
        return " + ".join(parts)
