"""Racah, Hahn and dual Hahn polynomials, and the exact 6j <-> Racah bridge.

Polynomials are evaluated as terminating hypergeometric sums with Kahan
compensation.  Racah lives on the quadratic lattice lambda(x) =
x(x+gamma+delta+1), Hahn on the linear lattice x = 0..N, dual Hahn on the
quadratic lattice again; the three-term recurrences and discrete
orthogonality weights below follow the standard normalizations (checked
against direct summation in the test suite, which is the point: the
recurrence and the sum are independent routes to the same family).

The 6j correspondence: expanding the Racah single sum around the smallest
of the three quad sums B = min(B_j) turns the 6j into

    {6j} = prefactor * R_n(lambda(x); alpha, beta, gamma, delta)

with n = B - S_max, x = B - S_2 (S_i the triad sums, S_max >= S_2 >= ...),
alpha = -B - 2, beta = S_max + S_3 - B + 1, gamma = B_3 - B,
delta = B_2 - S_max - S_3 - 1 and N = B + 1, so one denominator parameter
of the 4F3 equals -N exactly.  The prefactor is an explicit ExactRadical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .angmom import SixJArgs, _delta_sq, _fact2, wigner_6j
from .errors import DomainError
from .radicals import ExactRadical

__all__ = [
    "HypergeomParams",
    "racah_params",
    "hahn_params",
    "dual_hahn_params",
    "eval_poly",
    "lattice_value",
    "weight",
    "recurrence_residual",
    "racah_from_6j",
]


@dataclass(frozen=True)
class HypergeomParams:
    """Parameters of one finite family.

    family is 'racah' (alpha, beta, gamma, delta, N), 'hahn'
    (alpha, beta, N) or 'dual-hahn' (gamma, delta, N); N is the largest
    degree, so the family has N+1 members on a lattice of N+1 points.
    """

    family: str
    params: tuple[float, ...]
    n_max: int

    def __post_init__(self):
        if self.family not in ("racah", "hahn", "dual-hahn"):
            raise DomainError(f"unknown family {self.family!r}")
        if self.n_max < 0 or self.n_max != int(self.n_max):
            raise DomainError("N must be a non-negative integer")
        want = {"racah": 4, "hahn": 2, "dual-hahn": 2}[self.family]
        if len(self.params) != want:
            raise DomainError(f"{self.family} takes {want} parameters")


def racah_params(alpha, beta, gamma, delta, n_max: int, require_denominator: bool = True) -> HypergeomParams:
    p = HypergeomParams("racah", (float(alpha), float(beta), float(gamma), float(delta)), n_max)
    if require_denominator:
        lowers = (alpha + 1, beta + delta + 1, gamma + 1)
        if not any(abs(v + n_max) < 1e-9 for v in lowers):
            raise DomainError(
                "inadmissible Racah parameters: no denominator parameter equals -N"
            )
    return p


def hahn_params(alpha, beta, n_max: int) -> HypergeomParams:
    return HypergeomParams("hahn", (float(alpha), float(beta)), n_max)


def dual_hahn_params(gamma, delta, n_max: int) -> HypergeomParams:
    return HypergeomParams("dual-hahn", (float(gamma), float(delta)), n_max)


def lattice_value(p: HypergeomParams, x: float) -> float:
    """The spectral variable: quadratic lattice for racah/dual-hahn,
    linear for hahn."""
    if p.family == "hahn":
        return float(x)
    if p.family == "racah":
        gamma, delta = p.params[2], p.params[3]
    else:
        gamma, delta = p.params
    return x * (x + gamma + delta + 1)


def _kahan_hyp(uppers, lowers, terms: int) -> float:
    """Terminating (p)F(q) at unit argument via term ratios, Kahan-summed."""
    total = 1.0
    comp = 0.0
    term = 1.0
    for k in range(terms):
        num = 1.0
        for a in uppers:
            num *= a + k
        den = float(k + 1)
        for b in lowers:
            den *= b + k
        if den == 0.0:
            raise DomainError("hypergeometric denominator hit zero before termination")
        term *= num / den
        if term == 0.0:
            break
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def eval_poly(p: HypergeomParams, n: int, x) -> float:
    """Value of the degree-n family member at lattice point x (x is the
    integer lattice coordinate, not lambda(x))."""
    if not (0 <= n <= p.n_max):
        raise DomainError(f"degree n={n} outside 0..{p.n_max}")
    xf = float(x)
    if p.family == "racah":
        alpha, beta, gamma, delta = p.params
        uppers = (-n, n + alpha + beta + 1, -xf, xf + gamma + delta + 1)
        lowers = (alpha + 1, beta + delta + 1, gamma + 1)
    elif p.family == "hahn":
        alpha, beta = p.params
        uppers = (-n, n + alpha + beta + 1, -xf)
        lowers = (alpha + 1, -float(p.n_max))
    else:
        gamma, delta = p.params
        uppers = (-n, -xf, xf + gamma + delta + 1)
        lowers = (gamma + 1, -float(p.n_max))
    # terminating: -n kills the series after n terms
    return _kahan_hyp(uppers, lowers, n)


def _binom(a: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= (a - i) / (k - i)
    return out


def _poch(a: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def weight(p: HypergeomParams, x: int) -> float:
    """Orthogonality weight at lattice point x.

    Hahn and Racah use the standard closed-form weights.  The dual Hahn
    weight is taken from the duality R_n(lambda(x); g, d, N) = Q_x(n; g, d, N):
    it is the reciprocal norm of the degree-x Hahn member, computed by the
    finite sum itself rather than a transcribed closed form.
    """
    n_max = p.n_max
    if not (0 <= x <= n_max):
        raise DomainError(f"lattice point {x} outside 0..{n_max}")
    if p.family == "hahn":
        alpha, beta = p.params
        return _binom(alpha + x, x) * _binom(beta + n_max - x, n_max - x)
    if p.family == "dual-hahn":
        gamma, delta = p.params
        twin = hahn_params(gamma, delta, n_max)
        norm = math.fsum(
            weight(twin, y) * eval_poly(twin, x, y) ** 2 for y in range(n_max + 1)
        )
        return 1.0 / norm
    alpha, beta, gamma, delta = p.params
    num = (
        _poch(alpha + 1, x)
        * _poch(beta + delta + 1, x)
        * _poch(gamma + 1, x)
        * _poch(gamma + delta + 1, x)
        * (gamma + delta + 1 + 2 * x)
    )
    den = (
        math.factorial(x)
        * _poch(-alpha + gamma + delta + 1, x)
        * _poch(-beta + gamma + 1, x)
        * _poch(delta + 1, x)
        * (gamma + delta + 1)
    )
    return num / den


def _recurrence_ac(p: HypergeomParams, n: int) -> tuple[float, float]:
    """A_n and C_n of lambda(x) p_n = A_n p_{n+1} - (A_n + C_n) p_n + C_n p_{n-1}
    (for hahn the left side is -x Q_n)."""
    n_max = p.n_max
    if p.family == "hahn":
        alpha, beta = p.params
        a_n = (n + alpha + beta + 1) * (n + alpha + 1) * (n_max - n) / (
            (2 * n + alpha + beta + 1) * (2 * n + alpha + beta + 2)
        )
        c_n = n * (n + alpha + beta + n_max + 1) * (n + beta) / (
            (2 * n + alpha + beta) * (2 * n + alpha + beta + 1)
        )
        return a_n, c_n
    if p.family == "dual-hahn":
        gamma, delta = p.params
        return (n + gamma + 1) * (n - n_max), n * (n - delta - n_max - 1)
    alpha, beta, gamma, delta = p.params
    a_n = (
        (n + alpha + 1) * (n + alpha + beta + 1) * (n + beta + delta + 1) * (n + gamma + 1)
    ) / ((2 * n + alpha + beta + 1) * (2 * n + alpha + beta + 2))
    c_n = (
        n * (n + alpha + beta - gamma) * (n + alpha - delta) * (n + beta)
    ) / ((2 * n + alpha + beta) * (2 * n + alpha + beta + 1))
    return a_n, c_n


def recurrence_residual(p: HypergeomParams, n: int, x) -> float:
    """Deviation of the three-term recurrence at (n, x), using direct
    hypergeometric evaluation for the three members."""
    if not (1 <= n <= p.n_max - 1):
        raise DomainError("recurrence check needs an interior degree")
    a_n, c_n = _recurrence_ac(p, n)
    lhs = (-float(x) if p.family == "hahn" else lattice_value(p, x)) * eval_poly(p, n, x)
    rhs = (
        a_n * eval_poly(p, n + 1, x)
        - (a_n + c_n) * eval_poly(p, n, x)
        + c_n * eval_poly(p, n - 1, x)
    )
    return abs(lhs - rhs)


@dataclass(frozen=True)
class RacahMatch:
    """Result of the 6j -> Racah identification."""

    params: HypergeomParams
    n: int
    x: int
    proportionality: ExactRadical

    def polynomial_value(self) -> float:
        return eval_poly(self.params, self.n, self.x)

    def reconstructed(self) -> float:
        return float(self.proportionality) * self.polynomial_value()


def racah_from_6j(args: SixJArgs) -> RacahMatch:
    """Map an admissible 6j to (Racah parameters, degree, lattice point,
    exact proportionality) with wigner_6j == proportionality * R_n(lambda(x)).

    Raises DomainError for inadmissible arguments (where both sides are 0
    and the parameter dictionary is meaningless).
    """
    if not args.is_admissible():
        raise DomainError(f"{args} violates a triad; the 6j is 0")
    t = args.twice_tuple()
    tj1, tj2, tj12, tj3, tj4, tj23 = t
    s_twice = sorted(
        (tj1 + tj2 + tj12, tj1 + tj4 + tj23, tj3 + tj2 + tj23, tj3 + tj4 + tj12),
        reverse=True,
    )
    b_twice = sorted(
        (tj1 + tj2 + tj3 + tj4, tj2 + tj12 + tj4 + tj23, tj12 + tj3 + tj23 + tj1)
    )
    s1, s2, s3, s4 = (v // 2 for v in s_twice)
    b1, b2, b3 = (v // 2 for v in b_twice)

    n = b1 - s1
    x = b1 - s2
    alpha = -b1 - 2
    beta = s1 + s3 - b1 + 1
    gamma = b3 - b1
    delta = b2 - s1 - s3 - 1
    n_cap = b1 + 1
    params = racah_params(alpha, beta, gamma, delta, n_cap)

    prefactor = Fraction(_fact2(2 * b1 + 2), 1)
    for s in (s1, s2, s3, s4):
        prefactor /= _fact2(2 * (b1 - s))
    prefactor /= _fact2(2 * (b2 - b1)) * _fact2(2 * (b3 - b1))
    if b1 % 2:
        prefactor = -prefactor

    triads = (
        (tj1, tj2, tj12), (tj3, tj4, tj12), (tj1, tj4, tj23), (tj2, tj3, tj23),
    )
    rad = Fraction(1)
    for tr in triads:
        rad *= _delta_sq(*tr)
    proportionality = ExactRadical.sqrt_of(rad).scale(prefactor)
    return RacahMatch(params=params, n=n, x=x, proportionality=proportionality)
