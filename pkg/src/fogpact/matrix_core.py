"""Small dense symmetric-matrix helpers.

Everything here works on plain ``numpy`` arrays. Matrices are tiny (one row per
resource type), so dense LAPACK routines are used throughout.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from .errors import NotPsd, NotSymmetric, SingularMatrix

MAX_DIM = 64
TOL_PD = 1e-10  # relative to the largest eigenvalue
TOL_PSD = 1e-9
COND_LIMIT = 1e12


def as_symmetric(m: ArrayLike, name: str = "matrix") -> NDArray[np.float64]:
    """Return a read-only float copy of ``m`` after checking it is square and symmetric.

    Symmetry is checked exactly. Raises :class:`NotSymmetric` (a ``ValueError``)
    on failure.
    """
    arr = np.array(m, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSymmetric(f"{name} must be a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if not 1 <= n <= MAX_DIM:
        raise NotSymmetric(f"{name} dimension must be in [1, {MAX_DIM}], got {n}")
    if not np.all(np.isfinite(arr)):
        raise NotSymmetric(f"{name} has non-finite entries")
    if not np.array_equal(arr, arr.T):
        raise NotSymmetric(f"{name} is not symmetric")
    arr.flags.writeable = False
    return arr


def eigenvalues(m: ArrayLike) -> NDArray[np.float64]:
    """Ascending eigenvalues of a symmetric matrix."""
    return np.linalg.eigvalsh(np.asarray(m, dtype=np.float64))


def validate_psd(m: ArrayLike, tol: float = TOL_PSD) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return bool(eigenvalues(m)[0] >= -tol)


def is_positive_definite(m: ArrayLike, rel_tol: float = TOL_PD) -> bool:
    """True when the smallest eigenvalue exceeds ``rel_tol`` times the largest."""
    lam = eigenvalues(m)
    return bool(lam[-1] > 0 and lam[0] > rel_tol * lam[-1])


def invert(m: ArrayLike) -> NDArray[np.float64]:
    """Inverse of a symmetric positive definite matrix via Cholesky.

    Raises:
        SingularMatrix: if ``m`` is not positive definite within ``TOL_PD``.
    """
    arr = np.asarray(m, dtype=np.float64)
    if not is_positive_definite(arr):
        raise SingularMatrix("matrix is not positive definite; cannot invert")
    factor = scipy.linalg.cho_factor(arr, lower=True)
    inv = scipy.linalg.cho_solve(factor, np.eye(arr.shape[0]))
    return 0.5 * (inv + inv.T)


def solve_general(m: ArrayLike, v: ArrayLike) -> NDArray[np.float64]:
    """Solve ``m @ x = v`` for a square, possibly non-symmetric ``m``.

    LU with partial pivoting. A 2-norm condition number above ``COND_LIMIT``
    counts as singular.
    """
    arr = np.asarray(m, dtype=np.float64)
    rhs = np.asarray(v, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or rhs.shape != (arr.shape[0],):
        raise ValueError(f"incompatible shapes {arr.shape} and {rhs.shape}")
    cond = np.linalg.cond(arr)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMatrix(f"matrix is numerically singular (condition {cond:.3g})")
    try:
        return np.linalg.solve(arr, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(str(exc)) from exc


def sampling_factor(m: ArrayLike) -> NDArray[np.float64]:
    """Return ``L`` with ``L @ L.T == m`` for drawing correlated Gaussian noise.

    Uses Cholesky when ``m`` is positive definite and falls back to an
    eigendecomposition with negative eigenvalues clipped to zero, so singular
    covariances (including the zero matrix) are fine.

    Raises:
        NotPsd: if ``m`` has an eigenvalue below ``-TOL_PSD``.
    """
    arr = np.asarray(m, dtype=np.float64)
    if not validate_psd(arr):
        raise NotPsd("covariance matrix is not positive semi-definite")
    if is_positive_definite(arr):
        try:
            return np.linalg.cholesky(arr)
        except np.linalg.LinAlgError:
            pass
    lam, vecs = np.linalg.eigh(arr)
    return vecs * np.sqrt(np.clip(lam, 0.0, None))
