"""The six families I.A-III.B of overlap functions and their checks.

Family I holds the exact recoupling tables <ell_tilde|ell>; family II the
volume eigenfunctions <ell|k> in the chosen representation of K; family
III the eigenfunctions in the ell_tilde basis, composed as
<ell_tilde|k> = sum_ell <ell_tilde|ell><ell|k> (the triangular relation's
own mechanism).  Orthogonality of family I is verified exactly in the
square-free radical normal form; families II/III are verified in floats
with measured signs, since the +/- options are representation choices the
source text leaves open.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angmom import overlap_matrix
from .errors import DomainError
from .halfint import HalfInt
from .quadrilateral import Quadrilateral
from .radicals import ExactRadical, RadicalSum
from .volume import DEFAULT_TOL, VolumeSpectrum, build_matrix, spectrum

__all__ = [
    "FAMILIES",
    "OverlapTable",
    "FamilyReport",
    "family_table",
    "check_duality_I",
    "check_duality_II_III",
    "check_triangular",
    "recursion_checks",
]

FAMILIES = ("IA", "IB", "IIA", "IIB", "IIIA", "IIIB")


@dataclass(frozen=True)
class OverlapTable:
    """One family of overlap functions for a fixed quadrilateral.

    ``values[i, j]`` is <row_i | col_j>.  ``exact`` is populated for family
    I only, where the entries are closed-form radicals; the variable and
    degree descriptions reproduce the classification metadata (eigenvalue
    related to the variable, label carrying the polynomial degree).
    """

    family: str
    quad: Quadrilateral
    row_lattice: tuple
    col_lattice: tuple
    values: np.ndarray = field(repr=False)
    variable_desc: str
    degree_desc: str
    representation: str | None = None
    exact: tuple[tuple[ExactRadical, ...], ...] | None = field(default=None, repr=False)


def _spectrum_for(q: Quadrilateral, representation: str, tol: float) -> VolumeSpectrum:
    return spectrum(build_matrix(q, representation), tol)


def _psi_in_representation(spec: VolumeSpectrum) -> np.ndarray:
    """Eigenvector table <ell|k> in the matrix's own representation.

    The real-symmetric table is the recursion solution itself; the
    imaginary-antisymmetric table differs by the diagonal phase i^p
    relating the two forms of K.
    """
    psi = spec.eigenvectors
    if spec.matrix.representation == "real-symmetric":
        return psi.copy()
    d = spec.matrix.basis_phase()
    return d.conj()[:, np.newaxis] * psi.astype(complex)


def family_table(
    family: str,
    q: Quadrilateral,
    representation: str = "real-symmetric",
    tol: float = DEFAULT_TOL,
) -> OverlapTable:
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; use one of {FAMILIES}")
    ell = tuple(q.ell_lattice())
    ell_tilde = tuple(q.ell_tilde_lattice())

    if family in ("IA", "IB"):
        exact_ia = overlap_matrix(q)
        w = np.array([[float(x) for x in row] for row in exact_ia])
        if family == "IA":
            return OverlapTable(
                family="IA", quad=q, row_lattice=ell_tilde, col_lattice=ell,
                values=w, exact=tuple(tuple(r) for r in exact_ia),
                variable_desc="ell(ell+1)", degree_desc="ell_tilde",
            )
        exact_ib = tuple(tuple(exact_ia[i][j] for i in range(len(ell_tilde))) for j in range(len(ell)))
        return OverlapTable(
            family="IB", quad=q, row_lattice=ell, col_lattice=ell_tilde,
            values=w.T.copy(), exact=exact_ib,
            variable_desc="ell_tilde(ell_tilde+1)", degree_desc="ell",
        )

    spec = _spectrum_for(q, representation, tol)
    k_indices = tuple(range(spec.dimension))
    psi = _psi_in_representation(spec)

    if family == "IIA":
        return OverlapTable(
            family="IIA", quad=q, row_lattice=ell, col_lattice=k_indices,
            values=psi, representation=representation,
            variable_desc="lambda_k", degree_desc="ell",
        )
    if family == "IIB":
        return OverlapTable(
            family="IIB", quad=q, row_lattice=k_indices, col_lattice=ell,
            values=psi.conj().T.copy(), representation=representation,
            variable_desc="ell(ell+1)", degree_desc="k",
        )

    w = np.array([[float(x) for x in row] for row in overlap_matrix(q)])
    table_iiia = w.astype(psi.dtype) @ psi
    if family == "IIIA":
        return OverlapTable(
            family="IIIA", quad=q, row_lattice=ell_tilde, col_lattice=k_indices,
            values=table_iiia, representation=representation,
            variable_desc="lambda_k", degree_desc="ell_tilde",
        )
    return OverlapTable(
        family="IIIB", quad=q, row_lattice=k_indices, col_lattice=ell_tilde,
        values=table_iiia.conj().T.copy(), representation=representation,
        variable_desc="ell_tilde(ell_tilde+1)", degree_desc="k",
    )


@dataclass(frozen=True)
class FamilyReport:
    """Result of one verification; serializable via as_dict."""

    family: str
    quad_twice: tuple[int, int, int, int]
    lattice_bounds: tuple[int, int]
    orthogonality_deviation: float
    duality_sign: int | None = None
    sign_pattern: tuple[int, ...] | None = None
    triangular_deviation: float | None = None
    exact: bool = False
    passed: bool = True
    failures: tuple[str, ...] = ()
    representation: str | None = None

    def as_dict(self) -> dict:
        out = {
            "family": self.family,
            "quad_twice": list(self.quad_twice),
            "lattice_bounds": list(self.lattice_bounds),
            "orthogonality_deviation": self.orthogonality_deviation,
            "exact": self.exact,
            "passed": self.passed,
        }
        if self.representation is not None:
            out["representation"] = self.representation
        if self.duality_sign is not None:
            out["duality_sign"] = self.duality_sign
        if self.sign_pattern is not None:
            out["sign_pattern"] = list(self.sign_pattern)
        if self.triangular_deviation is not None:
            out["triangular_deviation"] = self.triangular_deviation
        if self.failures:
            out["failures"] = list(self.failures)
        return out


def check_duality_I(q: Quadrilateral) -> FamilyReport:
    """Exact self-duality of family I, both summation orders.

    Every diagonal entry must reduce to the rational 1 and every
    off-diagonal RadicalSum must be empty; violations are collected, not
    raised.
    """
    table = overlap_matrix(q)
    nr = len(table)
    nc = len(table[0]) if nr else 0
    failures: list[str] = []

    def run(sum_rows: bool):
        dim = nc if sum_rows else nr
        for i in range(dim):
            for j in range(i, dim):
                acc = RadicalSum.zero()
                if sum_rows:
                    for r in range(nr):
                        acc = acc + RadicalSum.from_radical(table[r][i] * table[r][j])
                else:
                    for c in range(nc):
                        acc = acc + RadicalSum.from_radical(table[i][c] * table[j][c])
                if i == j:
                    if acc.as_rational() != Fraction(1):
                        failures.append(f"diag ({i},{'cols' if sum_rows else 'rows'}) = {acc}")
                elif not acc.is_zero:
                    failures.append(f"offdiag ({i},{j},{'cols' if sum_rows else 'rows'}) = {acc}")

    run(sum_rows=True)
    run(sum_rows=False)
    return FamilyReport(
        family="I",
        quad_twice=q.twice_tuple(),
        lattice_bounds=(q.ell_min_twice(), q.ell_max_twice()),
        orthogonality_deviation=0.0 if not failures else float("nan"),
        exact=True,
        passed=not failures,
        failures=tuple(failures),
    )


def check_duality_II_III(
    family_pair: str,
    q: Quadrilateral,
    representation: str = "real-symmetric",
    tol: float = DEFAULT_TOL,
) -> FamilyReport:
    """Duality/completeness of class II or III.

    Verifies sum_ell <k'|ell><ell|k> = delta and sum_k <ell'|k><k|ell> =
    +/- delta, conjugating as the representation dictates; the resolved
    sign (or per-index sign pattern of the unconjugated sum in the
    antisymmetric representation) is measured from the tables, never
    assumed.
    """
    if family_pair not in ("II", "III"):
        raise DomainError("family_pair must be 'II' or 'III'")
    a = family_table(family_pair + "A", q, representation, tol)
    t = a.values
    n = t.shape[0]
    gram = np.abs(t.conj().T @ t - np.eye(t.shape[1])).max()
    completeness = np.abs(t @ t.conj().T - np.eye(n)).max()
    unconj = t @ t.T
    diag_signs = tuple(1 if x.real >= 0 else -1 for x in np.diag(unconj))
    off = unconj - np.diag(np.diag(unconj))
    pattern_clean = np.abs(np.abs(np.diag(unconj)) - 1).max() < 1e-9 and np.abs(off).max() < 1e-9
    constant = all(s == diag_signs[0] for s in diag_signs)
    sign = diag_signs[0] if (pattern_clean and constant) else None
    dev = float(max(gram, completeness))
    bounds = (
        (q.ell_min_twice(), q.ell_max_twice())
        if family_pair == "II"
        else (q.ell_tilde_lattice()[0].twice, q.ell_tilde_lattice()[-1].twice)
    )
    return FamilyReport(
        family=family_pair,
        quad_twice=q.twice_tuple(),
        lattice_bounds=bounds,
        orthogonality_deviation=dev,
        duality_sign=sign,
        sign_pattern=diag_signs if pattern_clean and not constant else None,
        passed=dev < tol * max(n, 1) * 10,
        representation=representation,
    )


def check_triangular(
    q: Quadrilateral,
    representation: str = "real-symmetric",
    tol: float = DEFAULT_TOL,
) -> FamilyReport:
    """The cross-class relation sum_k <ell_tilde|k><k|ell> = +/- <ell_tilde|ell>.

    Reports the maximum entrywise deviation at the better-matching sign.
    """
    ia = family_table("IA", q, representation, tol)
    iiia = family_table("IIIA", q, representation, tol)
    iia = family_table("IIA", q, representation, tol)
    lhs = iiia.values @ iia.values.conj().T
    dev_plus = float(np.abs(lhs - ia.values).max())
    dev_minus = float(np.abs(lhs + ia.values).max())
    sign = 1 if dev_plus <= dev_minus else -1
    return FamilyReport(
        family="triangular",
        quad_twice=q.twice_tuple(),
        lattice_bounds=(q.ell_min_twice(), q.ell_max_twice()),
        orthogonality_deviation=min(dev_plus, dev_minus),
        duality_sign=sign,
        triangular_deviation=min(dev_plus, dev_minus),
        passed=min(dev_plus, dev_minus) < 1e-11,
        representation=representation,
    )


def recursion_checks(q: Quadrilateral, representation: str = "real-symmetric", tol: float = DEFAULT_TOL) -> dict:
    """Eigenvalue-column assertions of the classification table.

    Family II.A columns satisfy the discrete recursion in ell at eigenvalue
    lambda_k; the rows (family II.B's functions of k) satisfy the same
    three-term relation read transposed, with ell(ell+1) as the spectral
    side.  Returns both residuals.
    """
    spec = _spectrum_for(q, representation, tol)
    lam = np.asarray(spec.eigenvalues)
    psi = spec.eigenvectors
    e = spec.matrix.offdiag_array()

    col_resid = 0.0
    for k in range(spec.dimension):
        v = psi[:, k]
        r = lam[k] * v
        if len(e):
            r[:-1] += e * v[1:]
            r[1:] += e * v[:-1]
        col_resid = max(col_resid, float(np.abs(r).max()))

    row_resid = 0.0
    for i in range(spec.dimension):
        r = lam * psi[i, :]
        if i + 1 < spec.dimension:
            r += e[i] * psi[i + 1, :]
        if i > 0:
            r += e[i - 1] * psi[i - 1, :]
        row_resid = max(row_resid, float(np.abs(r).max()))

    return {"column_residual": col_resid, "row_residual": row_resid}
