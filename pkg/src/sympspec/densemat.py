"""Dense real symmetric-matrix kernels.

Everything downstream (symplectic factorizations, bound checkers, entropy)
is built on the routines here: a cyclic Jacobi eigensolver, PSD square
roots, SPD inverses, singular values, unitarily invariant norms, and
condition numbers. All routines are pure, deterministic, and operate on
plain float64 numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ConvergenceFailure,
    NonFinite,
    NotPositiveDefinite,
    NotPSD,
    NotSquare,
    NotSymmetric,
)

# Relative tolerances; "relative" means scaled by the magnitude of the input.
TOL_SYM = 1e-12    # symmetry gate
TOL_PSD = 1e-10    # eigenvalue floor for PSD inputs (more negative -> error)
TOL_PD = 1e-12     # strict positivity gate
TOL_EIG = 1e-12    # eigenpair residual promise of sym_eig

JACOBI_OFF_TOL = 1e-14   # off-diagonal Frobenius target, relative to ||A||_F
JACOBI_MAX_SWEEPS = 100


class NormKind(Enum):
    """The three unitarily invariant norms implemented here."""

    OPERATOR = "operator"    # largest singular value
    FROBENIUS = "frobenius"  # root sum of squared entries
    TRACE = "trace"          # sum of singular values


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a symmetric matrix.

    ``eigenvalues`` ascend; column ``i`` of ``eigenvectors`` belongs to
    ``eigenvalues[i]``. Columns are orthonormal and sign-fixed so that the
    largest-magnitude component of each eigenvector is positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _jacobi_kernel(a, v, off_tol, max_sweeps):
    # Cyclic Jacobi with a skip threshold. Mutates `a` toward diagonal form
    # and accumulates rotations into `v`. Returns (converged, sweeps_used).
    n = a.shape[0]
    skip = off_tol / (2.0 * n)
    for sweep in range(max_sweeps):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += 2.0 * a[i, j] * a[i, j]
        if np.sqrt(off2) <= off_tol:
            return True, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                app = a[p, p]
                aqq = a[q, q]
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                # the rotation annihilates (p, q); assign the closed forms
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    off2 = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            off2 += 2.0 * a[i, j] * a[i, j]
    return bool(np.sqrt(off2) <= off_tol), max_sweeps


try:
    from numba import njit

    _jacobi_kernel = njit(cache=True)(_jacobi_kernel)
except ImportError:  # pragma: no cover - numba is a declared dependency
    pass


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite float64 2-D array; raise NonFinite otherwise."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise NotSquare(f"expected a 2-D array, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return m


def _require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    return m


def _require_symmetric(m: np.ndarray, tol_rel: float = TOL_SYM) -> np.ndarray:
    # Scale by the largest entry magnitude; cheap and never looser than an
    # operator-norm scale.
    scale = np.max(np.abs(m)) if m.size else 0.0
    asym = np.max(np.abs(m - m.T)) if m.size else 0.0
    if asym > tol_rel * scale:
        raise NotSymmetric(
            f"asymmetry {asym:.3e} exceeds {tol_rel:.1e} * {scale:.3e}"
        )
    return (m + m.T) / 2.0


def sym_eig(a) -> Spectrum:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Deterministic: fixed sweep order, ascending eigenvalues, and a sign
    convention that makes the largest-magnitude component of every
    eigenvector positive (ties broken by lowest index).
    """
    m = _require_symmetric(_require_square(as_matrix(a)))
    n = m.shape[0]
    work = np.ascontiguousarray(m.copy())
    vecs = np.eye(n)
    off_tol = JACOBI_OFF_TOL * float(np.sqrt(np.sum(work * work)))
    converged, _ = _jacobi_kernel(work, vecs, off_tol, JACOBI_MAX_SWEEPS)
    if not converged:
        raise ConvergenceFailure(
            f"Jacobi did not converge within {JACOBI_MAX_SWEEPS} sweeps"
        )
    vals = np.diag(work).copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    # Sign convention: np.argmax returns the first maximal index.
    for j in range(n):
        lead = int(np.argmax(np.abs(vecs[:, j])))
        if vecs[lead, j] < 0.0:
            vecs[:, j] = -vecs[:, j]
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def psd_sqrt(a) -> np.ndarray:
    """Symmetric PSD square root via the Jacobi eigendecomposition.

    Eigenvalues in ``[-TOL_PSD * ||A||, 0)`` are clamped to zero; anything
    more negative raises NotPSD.
    """
    spec = sym_eig(a)
    vals, vecs = spec.eigenvalues, spec.eigenvectors
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if vals.size and vals[0] < -TOL_PSD * scale:
        raise NotPSD(f"eigenvalue {vals[0]:.6e} below -{TOL_PSD:.1e} * {scale:.6e}")
    root = np.sqrt(np.clip(vals, 0.0, None))
    r = (vecs * root) @ vecs.T
    return (r + r.T) / 2.0


def spd_inverse(a) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix."""
    spec = sym_eig(a)
    vals, vecs = spec.eigenvalues, spec.eigenvectors
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if vals.size == 0 or vals[0] <= TOL_PD * scale:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {vals[0] if vals.size else float('nan'):.6e} "
            f"is not positive"
        )
    w = (vecs / vals) @ vecs.T
    return (w + w.T) / 2.0


def singular_values(a) -> np.ndarray:
    """Descending singular values: square roots of the eigenvalues of A^T A."""
    m = _require_square(as_matrix(a))
    gram = m.T @ m
    vals = sym_eig((gram + gram.T) / 2.0).eigenvalues
    return np.sqrt(np.clip(vals, 0.0, None))[::-1].copy()


def norm(a, kind: NormKind = NormKind.OPERATOR) -> float:
    """Unitarily invariant norm of a square matrix."""
    m = _require_square(as_matrix(a))
    if kind is NormKind.FROBENIUS:
        return float(np.sqrt(np.sum(m * m)))
    s = singular_values(m)
    if kind is NormKind.OPERATOR:
        return float(s[0]) if s.size else 0.0
    if kind is NormKind.TRACE:
        return float(np.sum(s))
    raise ValueError(f"unknown norm kind: {kind!r}")


def identity_norm(n: int, kind: NormKind) -> float:
    """Norm of the n-by-n identity; shows up on the right of several bounds."""
    if kind is NormKind.OPERATOR:
        return 1.0
    if kind is NormKind.FROBENIUS:
        return float(np.sqrt(n))
    if kind is NormKind.TRACE:
        return float(n)
    raise ValueError(f"unknown norm kind: {kind!r}")


def condition_number(a) -> float:
    """lambda_max / lambda_min of a symmetric positive definite matrix."""
    spec = sym_eig(a)
    vals = spec.eigenvalues
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    if vals.size == 0 or vals[0] <= TOL_PD * scale:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {vals[0] if vals.size else float('nan'):.6e} "
            f"is not positive"
        )
    return float(vals[-1] / vals[0])
