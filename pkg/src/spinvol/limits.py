"""Limiting behavior of the overlap families for large lower-row entries.

Three scans, one per stated limit:

* family II.A (volume eigenfunctions on the ell lattice) against the
  eigen-solution of the limiting three-term recursion, whose coefficients
  live on the quadratic lattice ell(ell+1) (the dual-Hahn-type relation);
* family III.B (eigenfunctions on the riding ell_tilde window) against the
  limiting recursion on the linear offset lattice u = ell_tilde - window
  base (the Hahn-type relation in the scaled magnetic variable);
* the 6j with three growing entries against the exact 3j with magnetic
  numbers (J4 - J23, J23 - J3, J3 - J4), under the sqrt(2J+1)
  normalization.

Scaled entries are (growth, offset) pairs, value = scale * growth + offset,
so entries grow proportionally while their differences (the magnetic
numbers of the limiting round symbol) stay fixed.  Errors compare unit
eigenvectors, which removes every scale normalization; resolved signs are
measured and reported, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import tridiag
from .angmom import SixJArgs, wigner_3j, wigner_6j
from .errors import DomainError
from .halfint import HalfInt, as_halfint
from .quadrilateral import Quadrilateral
from .radicals import ExactRadical
from .volume import DEFAULT_TOL, build_matrix, heron_area_squared, spectrum

__all__ = [
    "ScaledEntry",
    "GeneralizedSymbol",
    "ScanEntry",
    "ConvergenceReport",
    "limit_scan_IIA",
    "limit_scan_IIIB",
    "threej_limit_of_6j",
]


@dataclass(frozen=True)
class ScaledEntry:
    """Entry value = scale * growth + offset, in half-integers."""

    growth: HalfInt
    offset: HalfInt = HalfInt(0)

    @classmethod
    def of(cls, growth, offset=0) -> "ScaledEntry":
        return cls(as_halfint(growth), as_halfint(offset))

    def at(self, scale: int) -> HalfInt:
        return HalfInt(scale * self.growth.twice + self.offset.twice)

    def __str__(self) -> str:
        if self.offset.twice == 0:
            return f"{self.growth}*s"
        return f"{self.growth}*s{'+' if self.offset.twice > 0 else ''}{self.offset}"


@dataclass(frozen=True)
class GeneralizedSymbol:
    """A curly (recursion-family) or round (generalized-3j) symbol whose
    lower row scales.

    For curly symbols only the triads actually present in the construction
    are enforced, at evaluation time; for round symbols the three lower
    entries must sum to the negated third upper entry.
    """

    kind: str
    j1: HalfInt
    j2: HalfInt
    third: HalfInt | str
    lower: tuple[ScaledEntry, ...]
    k_index: int = 0

    def __post_init__(self):
        if self.kind not in ("curly", "round"):
            raise DomainError("kind must be 'curly' or 'round'")
        if self.kind == "round":
            if not isinstance(self.third, HalfInt):
                raise DomainError("round symbols need a fixed third upper entry")
            if len(self.lower) != 3:
                raise DomainError("round symbols have three lower entries")
            total_growth = sum(e.growth.twice for e in self.lower)
            total_offset = sum(e.offset.twice for e in self.lower)
            if total_growth != 0 or total_offset != -self.third.twice:
                raise DomainError("round-symbol lower row must sum to minus the third upper entry")

    @classmethod
    def family_IIA(cls, j1, j2, growth3, growth4, offset3=0, offset4=0, k_index=0) -> "GeneralizedSymbol":
        return cls(
            kind="curly", j1=as_halfint(j1), j2=as_halfint(j2), third="ell",
            lower=(ScaledEntry.of(growth3, offset3), ScaledEntry.of(growth4, offset4)),
            k_index=k_index,
        )

    @classmethod
    def family_IIIB(cls, j1, j2, growth3, growth4, offset3=0, offset4=0, k_index=0) -> "GeneralizedSymbol":
        return cls(
            kind="curly", j1=as_halfint(j1), j2=as_halfint(j2), third="lambda_k",
            lower=(ScaledEntry.of(growth3, offset3), ScaledEntry.of(growth4, offset4)),
            k_index=k_index,
        )

    @classmethod
    def sixj(cls, j1, j2, j12, lower3: ScaledEntry, lower4: ScaledEntry, lower23: ScaledEntry) -> "GeneralizedSymbol":
        return cls(
            kind="curly", j1=as_halfint(j1), j2=as_halfint(j2), third=as_halfint(j12),
            lower=(lower3, lower4, lower23),
        )

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "upper": [str(self.j1), str(self.j2), str(self.third)],
            "lower": [str(e) for e in self.lower],
            "k_index": self.k_index,
        }


@dataclass(frozen=True)
class ScanEntry:
    scale: int
    status: str                      # 'ok' or 'skip'
    error: float | None = None
    reason: str | None = None
    sign: int | None = None
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"scale": self.scale, "status": self.status}
        if self.error is not None:
            out["error"] = self.error
        if self.reason is not None:
            out["reason"] = self.reason
        if self.sign is not None:
            out["sign"] = self.sign
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class ConvergenceReport:
    kind: str
    base: dict
    entries: tuple[ScanEntry, ...]
    target_lattice: dict
    target_residual: float
    normalization: str

    @property
    def errors(self) -> list[float]:
        return [e.error for e in self.entries if e.status == "ok"]

    @property
    def ok_scales(self) -> list[int]:
        return [e.scale for e in self.entries if e.status == "ok"]

    def ratios(self) -> list[float]:
        errs = self.errors
        return [errs[i + 1] / errs[i] if errs[i] > 0 else 0.0 for i in range(len(errs) - 1)]

    def decay_exponent(self) -> float | None:
        """Least-squares slope of log2(error) against log2(scale)."""
        pts = [
            (math.log2(e.scale), math.log2(e.error))
            for e in self.entries
            if e.status == "ok" and e.error and e.error > 0
        ]
        if len(pts) < 2:
            return None
        xs = np.array([p[0] for p in pts])
        ys = np.array([p[1] for p in pts])
        return float(np.polyfit(xs, ys, 1)[0])

    def as_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "base": self.base,
            "entries": [e.as_dict() for e in self.entries],
            "target_lattice": self.target_lattice,
            "target_residual": self.target_residual,
            "normalization": self.normalization,
            "decay_exponent": self.decay_exponent(),
        }
        return d


def _limit_eigenpair(off_exact: list[ExactRadical], k_index: int):
    """Eigenpair k (descending eigenvalue order) of the zero-diagonal
    tridiagonal limit matrix, with the recursion sign convention."""
    e = np.array([float(x) for x in off_exact])
    n = len(e) + 1
    mu, vecs = tridiag.eigh_tridiagonal(np.zeros(n), e, DEFAULT_TOL)
    lam = -mu  # ascending mu = descending lambda, recursion convention
    if not (0 <= k_index < n):
        raise DomainError(f"k_index {k_index} outside 0..{n - 1}")
    v = vecs[:, k_index].copy()
    big = np.abs(v).max()
    for x in v:
        if abs(x) > 1e-8 * big:
            if x < 0:
                v = -v
            break
    resid = np.abs(lam[k_index] * v
                   + np.concatenate([e, [0.0]]) * np.concatenate([v[1:], [0.0]])
                   + np.concatenate([[0.0], e]) * np.concatenate([[0.0], v[:-1]])).max()
    return float(lam[k_index]), v, float(resid), e


def limit_scan_IIA(base: GeneralizedSymbol, scales: list[int], tol: float = DEFAULT_TOL) -> ConvergenceReport:
    """Family II.A against the limiting recursion on the quadratic lattice.

    Needs equal growths in the lower row (otherwise no limit exists and
    every scale is skipped once the coupling range empties).  The error at
    each scale is the larger of the eigenvector sup-deviation and the
    rescaled eigenvalue deviation.
    """
    if base.kind != "curly" or len(base.lower) != 2:
        raise DomainError("IIA scan needs a curly symbol with scaled (J3, J4)")
    e3, e4 = base.lower
    j1, j2 = base.j1, base.j2
    equal_growth = e3.growth == e4.growth
    delta_t = e3.offset.twice - e4.offset.twice if equal_growth else None

    limit_info = None
    if equal_growth:
        lo_t = max(abs(j1.twice - j2.twice), abs(delta_t))
        hi_t = j1.twice + j2.twice
        if (lo_t + hi_t) % 2 == 0 and lo_t <= hi_t:
            lattice_t = list(range(lo_t, hi_t + 1, 2))
            off_exact = []
            for t in lattice_t[1:]:
                f1_sq = heron_area_squared(t, j1.twice + 1, j2.twice + 1)
                ell_sq = Fraction(t * t - delta_t * delta_t, 4)
                w = Fraction((t + 1) * (t - 1))
                off_exact.append(ExactRadical.sqrt_of(f1_sq * ell_sq / w))
            if len(lattice_t) > 1:
                limit_info = (lattice_t, *_limit_eigenpair(off_exact, base.k_index))

    if limit_info is None:
        entries = tuple(
            ScanEntry(scale=s, status="skip", reason="no limiting recursion (unequal growths or empty limit lattice)")
            for s in scales
        )
        return ConvergenceReport(
            kind="IIA", base=base.describe(), entries=entries,
            target_lattice={"type": "quadratic"}, target_residual=float("nan"),
            normalization="eigenvector comparison (scale-free); eigenvalues divided by (J3+J4+1)/4",
        )

    lattice_t, mu_lim, psi_lim, resid_lim, _ = limit_info
    entries = []
    for s in scales:
        j3, j4 = e3.at(s), e4.at(s)
        try:
            q = Quadrilateral(j1, j2, j3, j4)
        except DomainError as exc:
            entries.append(ScanEntry(scale=s, status="skip", reason=str(exc)))
            continue
        if q.dimension == 1:
            entries.append(ScanEntry(scale=s, status="skip", reason="single-point lattice"))
            continue
        if [l.twice for l in q.ell_lattice()] != lattice_t:
            entries.append(ScanEntry(scale=s, status="skip", reason="pre-asymptotic lattice differs from the limit lattice"))
            continue
        spec = spectrum(build_matrix(q), tol)
        c = (j3.twice + j4.twice + 2) / 8.0  # (2J3+1 + 2J4+1)/2 / 4
        lam_scaled = spec.eigenvalues[base.k_index] / c
        psi = spec.eigenvectors[:, base.k_index]
        vec_err = float(np.abs(psi - psi_lim).max())
        lam_err = abs(lam_scaled - mu_lim)
        entries.append(
            ScanEntry(
                scale=s, status="ok", error=max(vec_err, lam_err), sign=1,
                detail={"J3": str(j3), "J4": str(j4), "vector_error": vec_err, "eigenvalue_error": lam_err},
            )
        )
    return ConvergenceReport(
        kind="IIA",
        base=base.describe(),
        entries=tuple(entries),
        target_lattice={
            "type": "quadratic",
            "points": [Fraction(t * (t + 2), 4).__float__() for t in lattice_t],
        },
        target_residual=resid_lim,
        normalization="eigenvector comparison (scale-free); eigenvalues divided by (J3+J4+2)/8 in twice-units",
    )


def _window_bounds(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt) -> tuple[int, int]:
    lo = max(abs(j2.twice - j3.twice), abs(j1.twice - j4.twice))
    hi = min(j2.twice + j3.twice, j1.twice + j4.twice)
    return lo, hi


def limit_scan_IIIB(base: GeneralizedSymbol, scales: list[int], tol: float = DEFAULT_TOL) -> ConvergenceReport:
    """Family III.B against the limiting recursion on the linear window
    lattice u = ell_tilde - window base.

    At each scale the III.B row (composed through family I in the
    imaginary-antisymmetric representation, where K stays tridiagonal in
    the dual basis) is compared, in absolute value, against the unit
    eigenvector of the limiting tridiagonal matrix; the per-scale
    consistency between the composed row and the direct ell_tilde-basis
    eigenvector is recorded as well.
    """
    if base.kind != "curly" or len(base.lower) != 2:
        raise DomainError("IIIB scan needs a curly symbol with scaled (J3, J4)")
    from .families import family_table  # local import to avoid a cycle

    e3, e4 = base.lower
    j1, j2 = base.j1, base.j2
    if e3.growth != e4.growth:
        entries = tuple(
            ScanEntry(scale=s, status="skip", reason="no limiting recursion (unequal growths)") for s in scales
        )
        return ConvergenceReport(
            kind="IIIB", base=base.describe(), entries=entries,
            target_lattice={"type": "linear"}, target_residual=float("nan"),
            normalization="absolute eigenvector comparison (scale-free)",
        )

    # r(u) = ell_tilde - J3 and s(u) = ell_tilde - J4 are scale-free once
    # the window rides: r0 = max(o3 - j2, o4 - j1) - o3 etc, in twice-units.
    o3, o4 = e3.offset.twice, e4.offset.twice
    lo0 = max(o3 - j2.twice, o4 - j1.twice)
    width = min(o3 + j2.twice, o4 + j1.twice) - lo0
    if width < 0 or width % 2:
        entries = tuple(
            ScanEntry(scale=s, status="skip", reason="empty or parity-broken limit window") for s in scales
        )
        return ConvergenceReport(
            kind="IIIB", base=base.describe(), entries=entries,
            target_lattice={"type": "linear"}, target_residual=float("nan"),
            normalization="absolute eigenvector comparison (scale-free)",
        )
    n_win = width // 2 + 1
    off_exact = []
    for u in range(1, n_win):
        r = lo0 + 2 * u - o3   # twice-value of ell_tilde - J3
        s_ = lo0 + 2 * u - o4
        p2 = Fraction((j2.twice + 2 - r) * (j2.twice + r), 4)
        p1 = Fraction((j1.twice + 2 - s_) * (j1.twice + s_), 4)
        off_exact.append(ExactRadical.sqrt_of(p1 * p2 / 16))
    if n_win < 2:
        entries = tuple(ScanEntry(scale=s, status="skip", reason="single-point window") for s in scales)
        return ConvergenceReport(
            kind="IIIB", base=base.describe(), entries=entries,
            target_lattice={"type": "linear", "points": list(range(n_win))},
            target_residual=float("nan"),
            normalization="absolute eigenvector comparison (scale-free)",
        )
    mu_lim, psi_lim, resid_lim, _ = _limit_eigenpair(off_exact, base.k_index)
    abs_lim = np.abs(psi_lim)

    entries = []
    for s in scales:
        j3, j4 = e3.at(s), e4.at(s)
        try:
            q = Quadrilateral(j1, j2, j3, j4)
        except DomainError as exc:
            entries.append(ScanEntry(scale=s, status="skip", reason=str(exc)))
            continue
        lo_t, hi_t = _window_bounds(j1, j2, j3, j4)
        if lo_t > hi_t:
            entries.append(ScanEntry(scale=s, status="skip", reason="empty ell_tilde window"))
            continue
        if (hi_t - lo_t) // 2 + 1 == 1:
            entries.append(ScanEntry(scale=s, status="skip", reason="single-point window"))
            continue
        if lo_t != s * e3.growth.twice + lo0 or (hi_t - lo_t) // 2 + 1 != n_win:
            entries.append(ScanEntry(scale=s, status="skip", reason="pre-asymptotic window differs from the limit window"))
            continue
        table = family_table("IIIB", q, "imaginary-antisymmetric", tol)
        row = np.abs(np.asarray(table.values[base.k_index, :]))
        # direct ell_tilde-basis recursion: the same operator on the dual pairing
        q_dual = Quadrilateral(j2, j3, j1, j4)
        spec_dual = spectrum(build_matrix(q_dual), tol)
        direct = np.abs(spec_dual.eigenvectors[:, base.k_index])
        consistency = float(np.abs(row - direct).max())
        err = float(np.abs(row - abs_lim).max())
        entries.append(
            ScanEntry(
                scale=s, status="ok", error=err, sign=1,
                detail={
                    "J3": str(j3), "J4": str(j4),
                    "window_base": str(HalfInt(lo_t)),
                    "composition_vs_recursion": consistency,
                },
            )
        )
    return ConvergenceReport(
        kind="IIIB",
        base=base.describe(),
        entries=tuple(entries),
        target_lattice={"type": "linear", "points": list(range(n_win))},
        target_residual=resid_lim,
        normalization="absolute eigenvector comparison on the window offset lattice (scale-free)",
    )


def threej_limit_of_6j(base: GeneralizedSymbol, scales: list[int]) -> ConvergenceReport:
    """sqrt(2 Jbar + 1) |6j| against the exact |3j| with magnetic numbers
    (J4 - J23, J23 - J3, J3 - J4).

    Jbar is the mean of the three scaled entries; the measured sign of
    6j * 3j at each scale is reported alongside the magnitude error.
    """
    if base.kind != "curly" or len(base.lower) != 3 or not isinstance(base.third, HalfInt):
        raise DomainError("6j->3j scan needs a curly symbol with fixed j12 and scaled (J3, J4, J23)")
    j1, j2, j12 = base.j1, base.j2, base.third
    e3, e4, e23 = base.lower

    entries = []
    target_desc = None
    for s in scales:
        J3, J4, J23 = e3.at(s), e4.at(s), e23.at(s)
        args = SixJArgs(j1, j2, j12, J3, J4, J23)
        m1 = J4 - J23
        m2 = J23 - J3
        m3 = J3 - J4
        if not args.is_admissible():
            entries.append(ScanEntry(scale=s, status="skip", reason=f"{args} inadmissible at this scale"))
            continue
        sixj = float(wigner_6j(args))
        try:
            threej = float(wigner_3j(j1, j2, j12, m1, m2, m3))
        except DomainError as exc:
            entries.append(ScanEntry(scale=s, status="skip", reason=str(exc)))
            continue
        if target_desc is None:
            target_desc = {
                "round_symbol": {
                    "upper": [str(j1), str(j2), str(j12)],
                    "lower": [str(m1), str(m2), str(m3)],
                },
                "value": threej,
            }
        jbar = (float(J3) + float(J4) + float(J23)) / 3.0
        scaled = math.sqrt(2 * jbar + 1) * abs(sixj)
        err = abs(scaled - abs(threej))
        sign = int(np.sign(sixj * threej)) if sixj * threej != 0 else 0
        entries.append(
            ScanEntry(
                scale=s, status="ok", error=err, sign=sign,
                detail={"J3": str(J3), "J4": str(J4), "J23": str(J23), "sixj": sixj, "threej": threej},
            )
        )
    return ConvergenceReport(
        kind="6j->3j",
        base=base.describe(),
        entries=tuple(entries),
        target_lattice={"type": "exact-3j", "target": target_desc},
        target_residual=0.0,
        normalization="sqrt(2*Jbar+1)*|6j| vs |3j|, Jbar the mean of the scaled entries",
    )
