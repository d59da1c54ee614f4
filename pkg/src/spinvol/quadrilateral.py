"""Parameter quadrilaterals (a, b, c, d) and their Regge/gauge machinery.

The four spins label the quadrilateral of sides a+1/2, ..., d+1/2 whose
diagonal is the coupling label ell.  The coupling lattice for ell pairs
(a, b) against (c, d); the dual lattice for ell_tilde pairs (b, c)
against (a, d).  Regge conjugation replaces every parameter x by s - x
with s the semi-perimeter, and the canonical gauge picks one
representative per orbit of permutations and conjugation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DomainError
from .halfint import HalfInt, as_halfint

__all__ = [
    "Quadrilateral",
    "CanonicalizationRecord",
    "regge_conjugate",
    "canonicalize",
    "iter_canonical_quads",
]


@dataclass(frozen=True, slots=True)
class Quadrilateral:
    a: HalfInt
    b: HalfInt
    c: HalfInt
    d: HalfInt
    canonical: bool = field(default=False, compare=False)

    def __post_init__(self):
        for x in (self.a, self.b, self.c, self.d):
            if x.twice < 0:
                raise DomainError("spin labels must be non-negative")
        if self.ell_min_twice() > self.ell_max_twice():
            raise DomainError(
                f"empty coupling range for quadrilateral ({self.a}, {self.b}, {self.c}, {self.d})"
            )
        if (self.a.twice + self.b.twice + self.c.twice + self.d.twice) % 2:
            raise DomainError(
                "no common ell parity: a+b and c+d differ by a half-integer"
            )

    @classmethod
    def of(cls, a, b, c, d, canonical: bool = False) -> "Quadrilateral":
        return cls(as_halfint(a), as_halfint(b), as_halfint(c), as_halfint(d), canonical)

    @property
    def spins(self) -> tuple[HalfInt, HalfInt, HalfInt, HalfInt]:
        return (self.a, self.b, self.c, self.d)

    def twice_tuple(self) -> tuple[int, int, int, int]:
        return (self.a.twice, self.b.twice, self.c.twice, self.d.twice)

    def ell_min_twice(self) -> int:
        return max(abs(self.a.twice - self.b.twice), abs(self.c.twice - self.d.twice))

    def ell_max_twice(self) -> int:
        return min(self.a.twice + self.b.twice, self.c.twice + self.d.twice)

    def ell_lattice(self) -> list[HalfInt]:
        """Admissible ell = j12 values, in unit steps."""
        return [HalfInt(t) for t in range(self.ell_min_twice(), self.ell_max_twice() + 1, 2)]

    def ell_tilde_lattice(self) -> list[HalfInt]:
        """Admissible ell_tilde = j23 values: (b, c) against (a, d)."""
        lo = max(abs(self.b.twice - self.c.twice), abs(self.a.twice - self.d.twice))
        hi = min(self.b.twice + self.c.twice, self.a.twice + self.d.twice)
        return [HalfInt(t) for t in range(lo, hi + 1, 2)]

    @property
    def dimension(self) -> int:
        return (self.ell_max_twice() - self.ell_min_twice()) // 2 + 1

    def semi_perimeter(self) -> HalfInt:
        return HalfInt((self.a.twice + self.b.twice + self.c.twice + self.d.twice) // 2)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c}, {self.d})"


def regge_conjugate(q: Quadrilateral) -> Quadrilateral:
    """Map (a, b, c, d) to (s-a, s-b, s-c, s-d), s the semi-perimeter."""
    total = q.a.twice + q.b.twice + q.c.twice + q.d.twice
    if total % 2:
        raise DomainError("Regge conjugation needs an even twice-total")
    s = total // 2
    return Quadrilateral(
        HalfInt(s - q.a.twice),
        HalfInt(s - q.b.twice),
        HalfInt(s - q.c.twice),
        HalfInt(s - q.d.twice),
    )


@dataclass(frozen=True, slots=True)
class CanonicalizationRecord:
    """How the canonical representative was reached: which permutation of
    the (possibly Regge-conjugated) spins was used."""

    permutation: tuple[int, int, int, int]
    regge_applied: bool
    identity: bool


def _chain_ok(t: tuple[int, int, int, int]) -> bool:
    a, b, c, d = t
    return a <= b <= d and d - (b - a) <= c <= d + (b - a)


def canonicalize(q: Quadrilateral) -> tuple[Quadrilateral, CanonicalizationRecord]:
    """Return the gauge-fixed representative of q.

    The representative satisfies a <= b <= d and d-(b-a) <= c <= d+(b-a)
    with a minimal over the eight values of q and its Regge conjugate;
    among valid candidates the lexicographically smallest is chosen.
    """
    conj = regge_conjugate(q)
    candidates: list[tuple[tuple[int, int, int, int], tuple[int, int, int, int], bool]] = []
    for source, regge in ((q.twice_tuple(), False), (conj.twice_tuple(), True)):
        for perm in itertools.permutations(range(4)):
            arranged = tuple(source[i] for i in perm)
            if _chain_ok(arranged):
                candidates.append((arranged, perm, regge))
    if not candidates:
        raise DomainError(f"no canonical representative found for {q}")
    octet_min = min(min(q.twice_tuple()), min(conj.twice_tuple()))
    best = min(c for c in candidates if c[0][0] == octet_min)
    values, perm, regge = best
    canon = Quadrilateral(*(HalfInt(t) for t in values), canonical=True)
    identity = (not regge) and values == q.twice_tuple() and perm == (0, 1, 2, 3)
    return canon, CanonicalizationRecord(perm, regge, identity)


def iter_canonical_quads(max_twice: int) -> Iterator[Quadrilateral]:
    """All canonical quadrilaterals with every twice-spin <= max_twice.

    The gauge chain already forces a nonempty lattice (dimension 2a+1) and
    makes a the octet minimum; the final filter keeps exactly one
    representative per symmetry orbit (the canonicalize fixed point).
    """
    for ta in range(0, max_twice + 1):
        for tb in range(ta, max_twice + 1):
            for td in range(tb, max_twice + 1):
                lo = td - (tb - ta)
                hi = min(td + (tb - ta), max_twice)
                for tc in range(lo, hi + 1, 2):
                    quad = Quadrilateral(
                        HalfInt(ta), HalfInt(tb), HalfInt(tc), HalfInt(td), canonical=True
                    )
                    canon, _ = canonicalize(quad)
                    if canon.twice_tuple() == quad.twice_tuple():
                        yield quad
