"""Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
eigenvalues, inverse iteration for the eigenvectors.

Deterministic and eigenvalue-targeted, which keeps the +/- pairing of the
zero-diagonal volume matrices clean.  The dense LAPACK route is reserved
for the independent test oracle.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError

__all__ = ["sturm_count", "eigenvalues_bisect", "eigenvector_inverse_iteration", "eigh_tridiagonal"]

_TINY = np.finfo(float).tiny


def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues of T strictly below x.

    diag has length n, off length n-1 (the sub/super diagonal).
    """
    pivmin = _TINY
    if len(diag) > 1:
        emax = float(np.abs(off).max())
        pivmin = max(_TINY, np.finfo(float).eps * emax * emax)
    count = 0
    p = 1.0
    for i in range(len(diag)):
        e2 = off[i - 1] * off[i - 1] if i else 0.0
        p = (diag[i] - x) - e2 / p
        if abs(p) < pivmin:
            p = -pivmin
        if p < 0.0:
            count += 1
    return count


def eigenvalues_bisect(diag: np.ndarray, off: np.ndarray, tol: float) -> np.ndarray:
    """All eigenvalues, ascending, each isolated by bisection to width
    tol * scale (scale = Gershgorin radius)."""
    n = len(diag)
    radii = np.zeros(n)
    for i in range(n):
        r = abs(diag[i])
        if i > 0:
            r += abs(off[i - 1])
        if i < n - 1:
            r += abs(off[i])
        radii[i] = r
    scale = max(radii.max(), _TINY)
    width = max(tol * scale, 8 * np.finfo(float).eps * scale)
    margin = 2 * width + 1e-12 * scale
    lo0, hi0 = -scale - margin, scale + margin

    eigs = np.empty(n)
    for k in range(n):
        lo, hi = lo0, hi0
        # invariant: count(lo) <= k < count(hi)
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            if sturm_count(diag, off, mid) <= k:
                lo = mid
            else:
                hi = mid
        eigs[k] = 0.5 * (lo + hi)
    return eigs


def _solve_shifted(diag: np.ndarray, off: np.ndarray, shift: float, rhs: np.ndarray) -> np.ndarray:
    """Solve (T - shift I) x = rhs by LU with partial pivoting on the band.

    Pivoting fills in one extra superdiagonal; near-singular pivots are
    nudged to keep inverse iteration alive at an exact eigenvalue.
    """
    n = len(diag)
    d = (diag - shift).astype(float)
    x = rhs.astype(float).copy()
    eps_floor = np.finfo(float).eps * (np.abs(diag).max(initial=0.0) + np.abs(off).max(initial=0.0) + abs(shift) + 1.0)

    def nudge(v: float) -> float:
        if abs(v) < eps_floor:
            return eps_floor if v >= 0 else -eps_floor
        return v

    if n == 1:
        return x / nudge(d[0])

    dl = off.astype(float).copy()          # sub-diagonal
    du = off.astype(float).copy()          # super-diagonal
    du2 = np.zeros(max(n - 2, 0))          # pivoting fill-in

    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            piv = nudge(d[i])
            d[i] = piv
            fact = dl[i] / piv
            d[i + 1] -= fact * du[i]
            x[i + 1] -= fact * x[i]
        else:
            fact = d[i] / dl[i]
            d[i] = dl[i]
            temp = d[i + 1]
            d[i + 1] = du[i] - fact * temp
            du[i] = temp
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
            x[i], x[i + 1] = x[i + 1], x[i]
            x[i + 1] -= fact * x[i]

    d[n - 1] = nudge(d[n - 1])
    x[n - 1] /= d[n - 1]
    x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i]
    return x


def eigenvector_inverse_iteration(
    diag: np.ndarray,
    off: np.ndarray,
    eigenvalue: float,
    tol: float,
    max_restarts: int = 5,
    deflate: np.ndarray | None = None,
) -> np.ndarray:
    """Unit eigenvector for an eigenvalue via inverse iteration.

    ``deflate`` holds already-computed eigenvectors of the same cluster
    (columns); the iterate is kept orthogonal to them so degenerate
    eigenvalues yield an orthonormal set.
    """
    n = len(diag)
    scale = max(np.abs(diag).max(initial=0.0), np.abs(off).max(initial=0.0), _TINY)
    target = max(tol, 64 * np.finfo(float).eps) * scale * max(n, 4)

    def project_out(v: np.ndarray) -> np.ndarray:
        if deflate is not None and deflate.shape[1]:
            v = v - deflate @ (deflate.T @ v)
        return v

    floor = 16 * np.finfo(float).eps * scale
    best_v, best_r = None, np.inf
    for restart in range(max_restarts):
        rng = np.random.default_rng(0x5EED + 977 * restart + n)
        v = project_out(rng.standard_normal(n))
        norm = np.linalg.norm(v)
        if norm == 0.0:
            continue
        v /= norm
        for _ in range(10):
            w = project_out(_solve_shifted(diag, off, eigenvalue, v))
            norm = np.linalg.norm(w)
            if not np.isfinite(norm) or norm == 0.0:
                break
            v = w / norm
            resid = _deflated_residual(diag, off, eigenvalue, v, deflate)
            if resid < best_r:
                best_v, best_r = v.copy(), resid
            if resid <= floor:
                return v
        if best_r <= target:
            return best_v
    if best_r <= target:
        return best_v
    raise NumericError(
        "inverse iteration failed to converge",
        diagnostics={
            "eigenvalue": float(eigenvalue),
            "dimension": n,
            "restarts": max_restarts,
            "target_residual": float(target),
        },
    )


def _deflated_residual(diag, off, lam, v, deflate) -> float:
    n = len(diag)
    r = (diag - lam) * v
    if n > 1:
        r[:-1] += off * v[1:]
        r[1:] += off * v[:-1]
    if deflate is not None and deflate.shape[1]:
        r = r - deflate @ (deflate.T @ r)
    return float(np.abs(r).max())


def _tridiag_residual(diag, off, lam, v)\
        -> float:
    n = len(diag)
    r = (diag - lam) * v
    if n > 1:
        r[:-1] += off * v[1:]
        r[1:] += off * v[:-1]
    return float(np.abs(r).max())


def eigh_tridiagonal(diag: np.ndarray, off: np.ndarray, tol: float = 1e-12):
    """Full eigendecomposition (ascending eigenvalues, orthonormal columns).

    Eigenvectors of close pairs are re-orthogonalized; signs are not fixed
    here (callers own their phase convention).
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = len(diag)
    if n == 0:
        return np.empty(0), np.empty((0, 0))
    if n == 1:
        return diag.copy(), np.ones((1, 1))
    eigs = eigenvalues_bisect(diag, off, tol)
    scale = max(np.abs(diag).max(), np.abs(off).max(), _TINY)
    vecs = np.empty((n, n))
    # dstein-style window: orthogonalize vectors of eigenvalues closer
    # than 1e-3 * ||T|| against each other
    ortho_window = 1e-3 * scale
    cluster_start = 0
    for k in range(n):
        if k > 0 and eigs[k] - eigs[k - 1] > ortho_window:
            cluster_start = k
        deflate = np.ascontiguousarray(vecs[:, cluster_start:k]) if k > cluster_start else None
        v = eigenvector_inverse_iteration(diag, off, eigs[k], tol, deflate=deflate)
        for j in range(cluster_start, k):
            v -= (vecs[:, j] @ v) * vecs[:, j]
        norm = np.linalg.norm(v)
        if norm < 0.5:
            raise NumericError(
                "eigenvector collapsed during cluster orthogonalization",
                diagnostics={"eigenvalue": float(eigs[k]), "index": k},
            )
        vecs[:, k] = v / norm
    return eigs, vecs
