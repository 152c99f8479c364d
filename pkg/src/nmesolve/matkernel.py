"""Dense real symmetric matrix kernels.

All functions take and return plain ``numpy.ndarray`` objects.  Symmetric
outputs are built as ``(R + R.T) / 2`` so that entries ``(i, j)`` and
``(j, i)`` are bit-identical.
"""
from typing import NamedTuple

import numpy as np
from scipy import linalg

from .errors import DimensionMismatch, InvalidInput, NoConvergence, NotPositiveDefinite

CHOL_PIVOT_TOL = 1e-13
POWER_EIG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_TOL = 1e-14


class EigenDecomp(NamedTuple):
    """Symmetric eigendecomposition ``M = vectors @ diag(values) @ vectors.T``.

    ``values`` are sorted ascending; column ``k`` of ``vectors`` belongs to
    ``values[k]``.
    """

    values: np.ndarray
    vectors: np.ndarray


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D float array (scalars become 1x1)."""
    A = np.array(M, dtype=float)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2:
        raise InvalidInput(f"{name} must be 2-D, got shape {A.shape}")
    if A.size == 0:
        raise InvalidInput(f"{name} is empty")
    if not np.all(np.isfinite(A)):
        raise InvalidInput(f"{name} has non-finite entries")
    return A


def symmetrize(M):
    """Return ``(M + M.T) / 2`` (exactly symmetric)."""
    M = np.asarray(M, dtype=float)
    return (M + M.T) / 2


def as_symmetric(M, name="matrix"):
    """Validate that ``M`` is square and finite, and return its symmetric part."""
    A = as_matrix(M, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")
    return symmetrize(A)


def fro_norm(M):
    """Frobenius norm; the norm used by every residual in this package."""
    return float(np.linalg.norm(np.asarray(M, dtype=float), "fro"))


def cholesky(M, tol=CHOL_PIVOT_TOL):
    """Lower Cholesky factor ``L`` with ``L @ L.T = M``.

    Parameters
    ----------
    M : (n, n) array_like
        Symmetric positive definite matrix.  Only its symmetric part is used.
    tol : float
        A pivot ``L[i, i]**2 <= tol * ||M||_F`` is treated as a loss of
        positive definiteness.

    Raises
    ------
    NotPositiveDefinite
    """
    S = as_symmetric(M)
    scale = fro_norm(S)
    try:
        L = linalg.cholesky(S, lower=True, check_finite=False)
    except linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"Cholesky failed: {exc}") from None
    pivots = np.diag(L) ** 2
    if scale == 0.0 or np.min(pivots) <= tol * scale:
        raise NotPositiveDefinite(
            f"Cholesky pivot {np.min(pivots):.3e} <= {tol:g} * ||M||_F ({scale:.3e})"
        )
    return np.tril(L)


def is_spd(M):
    try:
        cholesky(M)
    except NotPositiveDefinite:
        return False
    return True


def jacobi_eigen(M, max_sweeps=JACOBI_MAX_SWEEPS, off_tol=JACOBI_OFF_TOL):
    """Cyclic Jacobi eigensolver for a symmetric matrix.

    Sweeps over all ``(p, q)`` pairs with two-sided plane rotations until the
    off-diagonal Frobenius mass drops below ``off_tol * ||M||_F``.

    Raises
    ------
    NoConvergence
        If ``max_sweeps`` sweeps do not reach the threshold.
    """
    A = as_symmetric(M).copy()
    n = A.shape[0]
    V = np.eye(n)
    target = off_tol * fro_norm(A)

    def off(B):
        return np.sqrt(max(np.sum(B * B) - np.sum(np.diag(B) ** 2), 0.0))

    for _ in range(max_sweeps):
        if off(A) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                # Golub & Van Loan, sym.schur2
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * Vp - s * Vq
                V[:, q] = s * Vp + c * Vq
    else:
        if off(A) > target:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomp(w[order], V[:, order])


def sym_eigen(M, method="lapack"):
    """Eigendecomposition of a symmetric matrix, eigenvalues ascending.

    ``method="lapack"`` calls LAPACK ``syevd`` through NumPy;
    ``method="jacobi"`` uses :func:`jacobi_eigen`.  Both satisfy the same
    orthogonality and reconstruction contracts.
    """
    if method == "jacobi":
        return jacobi_eigen(M)
    if method != "lapack":
        raise InvalidInput(f"unknown eigensolver {method!r}")
    S = as_symmetric(M)
    try:
        w, V = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigh failed: {exc}") from None
    return EigenDecomp(w, V)


def min_eig(M):
    return float(sym_eigen(M).values[0])


def spd_power(M, p, tol=POWER_EIG_TOL):
    """Real power ``M**p`` of an SPD matrix via its eigendecomposition.

    Eigenvalues are never clamped: any eigenvalue ``<= tol * lambda_max``
    raises, since a silent clamp would hide a loss of definiteness.

    Raises
    ------
    NotPositiveDefinite
    """
    if not np.isfinite(p):
        raise InvalidInput(f"exponent must be finite, got {p}")
    w, V = sym_eigen(M)
    if w[-1] <= 0.0 or w[0] <= tol * w[-1]:
        raise NotPositiveDefinite(
            f"eigenvalue {w[0]:.3e} <= {tol:g} * lambda_max ({w[-1]:.3e})"
        )
    return symmetrize((V * w**p) @ V.T)


def spd_inverse(M):
    return spd_power(M, -1.0)


def newton_schulz_step(Y, X):
    """One Newton-Schulz inverse step ``2Y - Y X Y``.

    Satisfies ``I - X @ result = (I - X @ Y) @ (I - X @ Y)``, so repeated
    steps converge quadratically to ``inv(X)`` once ``||I - X Y|| < 1``.
    """
    Y = np.asarray(Y, dtype=float)
    X = np.asarray(X, dtype=float)
    if Y.ndim != 2 or Y.shape != X.shape or Y.shape[0] != Y.shape[1]:
        raise DimensionMismatch(f"shapes {Y.shape} and {X.shape} do not match")
    return symmetrize(2.0 * Y - Y @ X @ Y)


def singular_values(M):
    """Singular values in ascending order, as square roots of eig(M^T M)."""
    A = as_matrix(M)
    w = sym_eigen(A.T @ A).values
    return np.sqrt(np.clip(w, 0.0, None))


def solve_lower(L, B):
    return linalg.solve_triangular(L, B, lower=True, check_finite=False)


def solve_upper_t(L, B):
    """Solve ``L.T @ Z = B`` for lower-triangular ``L``."""
    return linalg.solve_triangular(L, B, lower=True, trans="T", check_finite=False)
