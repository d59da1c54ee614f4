"""The volume operator: Heron-formula matrix elements, tridiagonal build,
and spectra.

The operator acts on the ell = j12 lattice of a quadrilateral with matrix
elements

    alpha_ell = F(ell; a+1/2; b+1/2) F(ell; c+1/2; d+1/2) / sqrt((2ell+1)(2ell-1)),

F the Heron area of the triangle with the given side lengths.  In the
real-symmetric representation the eigenfunctions solve the discrete
Schroedinger-like recursion

    lambda_k Psi_ell + alpha_{ell+1} Psi_{ell+1} + alpha_ell Psi_{ell-1} = 0,

so the reported eigenvalues are the negated eigenvalues of the +alpha
tridiagonal matrix; the two sign conventions give the same symmetric
spectrum and are fixed here once and verified against the dense commutator
realization in the quadratic-algebra module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import tridiag
from .errors import DomainError
from .halfint import HalfInt, as_halfint
from .quadrilateral import Quadrilateral
from .radicals import ExactRadical

__all__ = [
    "heron_area_squared",
    "heron_area",
    "alpha",
    "alpha_float",
    "VolumeMatrix",
    "build_matrix",
    "VolumeSpectrum",
    "spectrum",
    "spectrum_record",
    "record_to_spectrum",
]

REPRESENTATIONS = ("real-symmetric", "imaginary-antisymmetric")
DEFAULT_TOL = 1e-12


def heron_area_squared(ta: int, tb: int, tc: int) -> Fraction:
    """Squared Heron area for twice-valued side lengths; 0 if degenerate,
    negative values are clamped to the caller (no triangle)."""
    s0 = ta + tb + tc
    s1 = -ta + tb + tc
    s2 = ta - tb + tc
    s3 = ta + tb - tc
    return Fraction(s0 * s1 * s2 * s3, 256)


def heron_area(a, b, c) -> ExactRadical:
    """Heron area of the triangle with sides a, b, c; zero when collinear,
    DomainError when the sides violate the (real) triangle inequality."""
    ta, tb, tc = (as_halfint(x).twice for x in (a, b, c))
    sq = heron_area_squared(ta, tb, tc)
    if sq < 0:
        raise DomainError(f"sides ({a}, {b}, {c}) do not form a triangle")
    return ExactRadical.sqrt_of(sq)


def alpha(ell, q: Quadrilateral) -> ExactRadical:
    """Exact off-diagonal element alpha_ell coupling ell to ell-1."""
    ell = as_halfint(ell)
    t = ell.twice
    if not (q.ell_min_twice() < t <= q.ell_max_twice()):
        raise DomainError(
            f"ell={ell} out of coupling range ({HalfInt(q.ell_min_twice())}, {HalfInt(q.ell_max_twice())}]"
        )
    f1 = heron_area_squared(t, q.a.twice + 1, q.b.twice + 1)
    f2 = heron_area_squared(t, q.c.twice + 1, q.d.twice + 1)
    weight = Fraction((t + 1) * (t - 1))
    return ExactRadical.sqrt_of(f1 * f2 / weight)


def alpha_float(ell, q: Quadrilateral) -> float:
    return float(alpha(ell, q))


@dataclass(frozen=True)
class VolumeMatrix:
    """Tridiagonal volume matrix on the ell lattice of one quadrilateral.

    offdiag[i] is alpha at lattice[i+1] (coupling node i+1 to node i).  In
    the real-symmetric representation both off-diagonals are +alpha; in the
    imaginary-antisymmetric one the entry (ell, ell-1) is -i alpha and
    (ell-1, ell) is +i alpha, unitarily equivalent through the diagonal
    phase i^p recorded by :meth:`basis_phase`.
    """

    quad: Quadrilateral
    lattice: tuple[HalfInt, ...]
    offdiag_exact: tuple[ExactRadical, ...]
    offdiag: tuple[float, ...]
    representation: str = "real-symmetric"

    @property
    def dimension(self) -> int:
        return len(self.lattice)

    def offdiag_array(self) -> np.ndarray:
        return np.asarray(self.offdiag, dtype=float)

    def dense(self) -> np.ndarray:
        """Dense matrix in the chosen representation."""
        n = self.dimension
        e = self.offdiag_array()
        if self.representation == "real-symmetric":
            m = np.zeros((n, n))
            for i in range(n - 1):
                m[i, i + 1] = m[i + 1, i] = e[i]
            return m
        m = np.zeros((n, n), dtype=complex)
        for i in range(n - 1):
            m[i + 1, i] = -1j * e[i]
            m[i, i + 1] = 1j * e[i]
        return m

    def basis_phase(self) -> np.ndarray:
        """Diagonal unitary D with D K_antisym D^dagger = K_real-symmetric."""
        return np.array([1j ** p for p in range(self.dimension)])


def build_matrix(q: Quadrilateral, representation: str = "real-symmetric") -> VolumeMatrix:
    if representation not in REPRESENTATIONS:
        raise DomainError(f"unknown representation {representation!r}; use one of {REPRESENTATIONS}")
    lattice = tuple(q.ell_lattice())
    exact = tuple(alpha(ell, q) for ell in lattice[1:])
    return VolumeMatrix(
        quad=q,
        lattice=lattice,
        offdiag_exact=exact,
        offdiag=tuple(float(x) for x in exact),
        representation=representation,
    )


@dataclass(frozen=True)
class VolumeSpectrum:
    """Eigenvalues (descending) and real eigenfunctions Psi_ell^(k) of the
    discrete recursion; columns of ``eigenvectors`` are indexed by k, rows
    by ell in lattice order."""

    matrix: VolumeMatrix
    eigenvalues: tuple[float, ...]
    eigenvectors: np.ndarray = field(repr=False)
    residual: float

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def gram_deviation(self) -> float:
        v = self.eigenvectors
        return float(np.abs(v.T @ v - np.eye(v.shape[1])).max())

    def recursion_residual(self) -> float:
        return _recursion_residual(self.matrix.offdiag_array(), np.asarray(self.eigenvalues), self.eigenvectors)

    def pairing_deviation(self) -> float:
        lam = np.asarray(self.eigenvalues)
        return float(np.abs(lam + lam[::-1]).max())


def _recursion_residual(e: np.ndarray, lam: np.ndarray, psi: np.ndarray) -> float:
    """max over (k, ell) of |lambda_k Psi_ell + alpha_{ell+1} Psi_{ell+1} + alpha_ell Psi_{ell-1}|."""
    r = psi * lam[np.newaxis, :]
    if len(e):
        r[:-1] += e[:, np.newaxis] * psi[1:]
        r[1:] += e[:, np.newaxis] * psi[:-1]
    return float(np.abs(r).max()) if r.size else 0.0


def _sign_fix(vecs: np.ndarray) -> np.ndarray:
    """First significant component of every column made positive."""
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        big = np.abs(col).max()
        for x in col:
            if abs(x) > 1e-8 * big:
                if x < 0:
                    out[:, k] = -col
                break
    return out


def spectrum(m: VolumeMatrix, tol: float = DEFAULT_TOL) -> VolumeSpectrum:
    """Solve the eigenproblem of the volume matrix.

    Eigenvalues come from Sturm bisection, eigenvectors from inverse
    iteration; the zero mode of odd dimensions is pinned to exactly 0.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    n = m.dimension
    e = m.offdiag_array()
    diag = np.zeros(n)
    mu, vecs = tridiag.eigh_tridiagonal(diag, e, tol)
    # Eq-style convention: lambda_k = -mu_k; ascending mu = descending lambda.
    lam = -mu
    scale = np.abs(e).max() if len(e) else 0.0
    if n % 2 == 1:
        k0 = n // 2
        if abs(lam[k0]) < tol * max(scale, 1.0) * 10:
            lam[k0] = 0.0
    vecs = _sign_fix(vecs)
    resid = _recursion_residual(e, lam, vecs)
    return VolumeSpectrum(
        matrix=m,
        eigenvalues=tuple(float(x) for x in lam),
        eigenvectors=vecs,
        residual=resid,
    )


def spectrum_record(spec: VolumeSpectrum, version: str) -> dict:
    """Serialization schema shared with the CLI cache: quadrilateral in
    twice-integers, lattice bounds, alpha list, eigenvalues, eigenvector
    matrix row-major, residual, tool version."""
    m = spec.matrix
    return {
        "quad_twice": list(m.quad.twice_tuple()),
        "representation": m.representation,
        "lattice_twice": [m.lattice[0].twice, m.lattice[-1].twice],
        "alpha": [float(x) for x in m.offdiag],
        "eigenvalues": list(spec.eigenvalues),
        "eigenvectors_row_major": [float(x) for x in spec.eigenvectors.flatten()],
        "residual": spec.residual,
        "tool_version": version,
    }


def record_to_spectrum(record: dict) -> VolumeSpectrum:
    """Rebuild a VolumeSpectrum from its serialized record."""
    quad = Quadrilateral(*(HalfInt(t) for t in record["quad_twice"]))
    m = build_matrix(quad, record["representation"])
    expected = [m.lattice[0].twice, m.lattice[-1].twice]
    if expected != list(record["lattice_twice"]):
        raise DomainError("record lattice bounds do not match the quadrilateral")
    n = m.dimension
    vecs = np.array(record["eigenvectors_row_major"], dtype=float).reshape(n, n)
    return VolumeSpectrum(
        matrix=m,
        eigenvalues=tuple(record["eigenvalues"]),
        eigenvectors=vecs,
        residual=float(record["residual"]),
    )
