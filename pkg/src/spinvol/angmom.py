"""Exact Wigner 3j/6j symbols, triangle rules and symmetry orbits.

All values are :class:`~spinvol.radicals.ExactRadical` computed from the
Racah single-sum formulas over big rationals.  Inadmissible couplings give
exact zeros (selection rules are data, not faults); malformed inputs such
as mismatched j/m parity raise :class:`~spinvol.errors.DomainError`.

Phase conventions are Condon-Shortley.  The overlap <ell_tilde|ell> uses
the recoupling phase (-1)^(j1+j2+j3+j4), which is always an integer power
and makes every overlap table real orthogonal; for quadrilaterals with
integer j1+j2+j3 it agrees with the (-1)^(j1+j2+j3) convention up to one
overall sign of the whole table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError
from .halfint import HalfInt, as_halfint
from .quadrilateral import Quadrilateral
from .radicals import ExactRadical

__all__ = [
    "triangle_ok",
    "wigner_3j",
    "wigner_6j",
    "SixJArgs",
    "overlap_coefficient",
    "overlap_matrix",
    "regge_map_sixj",
    "symmetry_orbit",
]


def triangle_ok(a, b, c) -> bool:
    """|a-b| <= c <= a+b and integer perimeter."""
    ta, tb, tc = as_halfint(a).twice, as_halfint(b).twice, as_halfint(c).twice
    return _triangle_ok_t(ta, tb, tc)


def _triangle_ok_t(ta: int, tb: int, tc: int) -> bool:
    if (ta + tb + tc) % 2:
        return False
    return abs(ta - tb) <= tc <= ta + tb


def _fact2(twice: int) -> int:
    """(twice/2)! for an even non-negative twice-value."""
    if twice % 2 or twice < 0:
        raise DomainError(f"factorial argument {twice}/2 is not a non-negative integer")
    return factorial(twice // 2)


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    """Triangle coefficient squared: (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!."""
    return Fraction(
        _fact2(ta + tb - tc) * _fact2(ta - tb + tc) * _fact2(-ta + tb + tc),
        _fact2(ta + tb + tc + 2),
    )


@lru_cache(maxsize=None)
def _wigner_3j_t(tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int) -> ExactRadical:
    if tm1 + tm2 + tm3 != 0:
        return ExactRadical.zero()
    if not _triangle_ok_t(tj1, tj2, tj3):
        return ExactRadical.zero()
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm3) > tj3:
        return ExactRadical.zero()

    # Van der Waerden / Racah single sum, everything in twice-values.
    tmin = max(0, tj2 - tj3 - tm1, tj1 - tj3 + tm2)
    tmax = min(tj1 + tj2 - tj3, tj1 - tm1, tj2 + tm2)
    if tmin > tmax:
        return ExactRadical.zero()
    total = Fraction(0)
    for tt in range(tmin, tmax + 1, 2):
        den = (
            _fact2(tt)
            * _fact2(tj1 + tj2 - tj3 - tt)
            * _fact2(tj1 - tm1 - tt)
            * _fact2(tj2 + tm2 - tt)
            * _fact2(tj3 - tj2 + tm1 + tt)
            * _fact2(tj3 - tj1 - tm2 + tt)
        )
        term = Fraction(1, den)
        total += -term if (tt // 2) % 2 else term
    if total == 0:
        return ExactRadical.zero()

    rad = _delta_sq(tj1, tj2, tj3) * Fraction(
        _fact2(tj1 + tm1) * _fact2(tj1 - tm1)
        * _fact2(tj2 + tm2) * _fact2(tj2 - tm2)
        * _fact2(tj3 + tm3) * _fact2(tj3 - tm3),
        1,
    )
    phase = -1 if ((tj1 - tj2 - tm3) // 2) % 2 else 1
    value = ExactRadical.sqrt_of(rad).scale(total)
    return value if phase > 0 else -value


def wigner_3j(j1, j2, j3, m1, m2, m3) -> ExactRadical:
    """Exact Wigner 3j symbol.

    Returns the zero radical when m1+m2+m3 != 0 or a triangle fails;
    raises DomainError when some (j, m) pair has mismatched parity.
    """
    js = [as_halfint(x) for x in (j1, j2, j3)]
    ms = [as_halfint(x) for x in (m1, m2, m3)]
    for j, m in zip(js, ms):
        if (j.twice + m.twice) % 2:
            raise DomainError(f"projection {m} has wrong parity for spin {j}")
    return _wigner_3j_t(js[0].twice, js[1].twice, js[2].twice, ms[0].twice, ms[1].twice, ms[2].twice)


@dataclass(frozen=True, slots=True)
class SixJArgs:
    """Arguments of a 6j symbol in the array layout (j1 j2 j12 / j3 j4 j23)."""

    j1: HalfInt
    j2: HalfInt
    j12: HalfInt
    j3: HalfInt
    j4: HalfInt
    j23: HalfInt

    @classmethod
    def of(cls, j1, j2, j12, j3, j4, j23) -> "SixJArgs":
        return cls(*(as_halfint(x) for x in (j1, j2, j12, j3, j4, j23)))

    @classmethod
    def for_overlap(cls, q: Quadrilateral, ell, ell_tilde) -> "SixJArgs":
        """The array {a b ell / c d ell_tilde} entering <ell_tilde|ell>."""
        return cls(q.a, q.b, as_halfint(ell), q.c, q.d, as_halfint(ell_tilde))

    def twice_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (
            self.j1.twice, self.j2.twice, self.j12.twice,
            self.j3.twice, self.j4.twice, self.j23.twice,
        )

    def triads(self):
        """The four coupled triads of the array."""
        return (
            (self.j1, self.j2, self.j12),
            (self.j3, self.j4, self.j12),
            (self.j1, self.j4, self.j23),
            (self.j2, self.j3, self.j23),
        )

    def is_admissible(self) -> bool:
        return all(triangle_ok(*t) for t in self.triads())

    def __str__(self) -> str:
        return f"{{{self.j1} {self.j2} {self.j12} / {self.j3} {self.j4} {self.j23}}}"


@lru_cache(maxsize=None)
def _wigner_6j_t(t: tuple[int, int, int, int, int, int]) -> ExactRadical:
    tj1, tj2, tj12, tj3, tj4, tj23 = t
    triads = (
        (tj1, tj2, tj12),
        (tj3, tj4, tj12),
        (tj1, tj4, tj23),
        (tj2, tj3, tj23),
    )
    if not all(_triangle_ok_t(*tr) for tr in triads):
        return ExactRadical.zero()

    ts = [sum(tr) for tr in triads]
    tb = [
        tj1 + tj2 + tj3 + tj4,
        tj2 + tj12 + tj4 + tj23,
        tj12 + tj3 + tj23 + tj1,
    ]
    total = Fraction(0)
    for tt in range(max(ts), min(tb) + 1, 2):
        num = _fact2(tt + 2)
        den = 1
        for s in ts:
            den *= _fact2(tt - s)
        for b in tb:
            den *= _fact2(b - tt)
        term = Fraction(num, den)
        total += -term if (tt // 2) % 2 else term
    if total == 0:
        return ExactRadical.zero()
    rad = Fraction(1)
    for tr in triads:
        rad *= _delta_sq(*tr)
    return ExactRadical.sqrt_of(rad).scale(total)


def wigner_6j(args: SixJArgs) -> ExactRadical:
    """Exact 6j symbol by the Racah single-sum formula."""
    return _wigner_6j_t(args.twice_tuple())


def overlap_coefficient(ell, ell_tilde, q: Quadrilateral) -> ExactRadical:
    """<ell_tilde | ell>(a,b,c,d): the real orthogonal change of coupling.

    Equals (-1)^(a+b+c+d) sqrt((2 ell + 1)(2 ell_tilde + 1)) {a b ell / c d ell_tilde};
    out-of-range labels give the zero radical.
    """
    ell = as_halfint(ell)
    ell_tilde = as_halfint(ell_tilde)
    sixj = wigner_6j(SixJArgs.for_overlap(q, ell, ell_tilde))
    if sixj.is_zero:
        return ExactRadical.zero()
    weight = Fraction((ell.twice + 1) * (ell_tilde.twice + 1))
    phase_exp = (q.a.twice + q.b.twice + q.c.twice + q.d.twice) // 2
    value = ExactRadical.sqrt_of(weight) * sixj
    return -value if phase_exp % 2 else value


def overlap_matrix(q: Quadrilateral) -> list[list[ExactRadical]]:
    """Exact table W[i][j] = <ell_tilde_i | ell_j> over the two lattices."""
    return [
        [overlap_coefficient(ell, lt, q) for ell in q.ell_lattice()]
        for lt in q.ell_tilde_lattice()
    ]


# -- symmetry orbit ---------------------------------------------------------
#
# A 6j array is acted on by 24 classical symmetries (column permutations and
# simultaneous upper/lower swaps in two columns) plus Regge maps that fix one
# column and replace the other four entries by s - entry.  Together they
# generate a group of order 144 (S4 x S3).

def _columns_of(t):
    return ((t[0], t[3]), (t[1], t[4]), (t[2], t[5]))


def _from_columns(cols):
    (a, d), (b, e), (c, f) = cols
    return (a, b, c, d, e, f)


def _classical_images(t):
    out = set()
    cols = _columns_of(t)
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        pc = tuple(cols[i] for i in perm)
        for flips in ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)):
            fc = tuple((c[1], c[0]) if f else c for c, f in zip(pc, flips))
            out.add(_from_columns(fc))
    return out


def _regge_images(t):
    """Regge maps fixing each column in turn, where parity allows."""
    out = set()
    cols = _columns_of(t)
    for fixed in range(3):
        moving = [cols[i] for i in range(3) if i != fixed]
        flat = [x for pair in moving for x in pair]
        total = sum(flat)
        if total % 2:
            continue
        s = total // 2
        mapped = [s - x for x in flat]
        if any(x < 0 for x in mapped):
            continue
        new_cols = list(cols)
        k = 0
        for i in range(3):
            if i == fixed:
                continue
            new_cols[i] = (mapped[k], mapped[k + 1])
            k += 2
        out.add(_from_columns(tuple(new_cols)))
    return out


def regge_map_sixj(args: SixJArgs) -> SixJArgs:
    """The Regge symmetry fixing the third column: parameters (j1 j2 j3 j4)
    are replaced by their semi-perimeter complements."""
    t = args.twice_tuple()
    flat = (t[0], t[1], t[3], t[4])
    total = sum(flat)
    if total % 2:
        raise DomainError("Regge map needs an even twice-sum of the moving entries")
    s = total // 2
    return SixJArgs(
        HalfInt(s - t[0]), HalfInt(s - t[1]), HalfInt(t[2]),
        HalfInt(s - t[3]), HalfInt(s - t[4]), HalfInt(t[5]),
    )


def symmetry_orbit(args: SixJArgs) -> set[SixJArgs]:
    """Orbit of the array under classical and Regge symmetries.

    The orbit size divides 144; every member evaluates to the same exact
    6j value.
    """
    start = args.twice_tuple()
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for t in frontier:
            for img in _classical_images(t) | _regge_images(t):
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return {SixJArgs(*(HalfInt(x) for x in t)) for t in seen}
