"""Positive definite total least squares (Cholesky variant).

For ``D X ~ T`` with both sides noisy, the SPD estimate minimizes

    f(X) = tr((D X - T)^T (D - T X^{-1})).

Up to the constant ``-2 tr(D^T T)`` this is ``tr(X D^T D) + tr(T^T T X^{-1})``,
whose gradient vanishes exactly when ``X (D^T D) X = T^T T``.  With
``D^T D = L L^T`` the unique SPD root is

    X = L^{-T} (L^T T^T T L)^{1/2} L^{-1}.
"""
import numpy as np

from . import matkernel as mk
from .errors import DimensionMismatch, NotPositiveDefinite, RankDeficient, SingularTarget

SINGULAR_TOL = 1e-13


def pdtls_objective(X, D, T):
    """Evaluate the total error functional literally, as written above."""
    X = np.asarray(X, dtype=float)
    D = np.asarray(D, dtype=float)
    T = np.asarray(T, dtype=float)
    Xinv_applied = np.linalg.solve(X.T, T.T).T  # T @ inv(X)
    return float(np.trace((D @ X - T).T @ (D - Xinv_applied)))


def pdtls_chol(D, T):
    """SPD minimizer of the total error functional for ``D X ~ T``.

    Parameters
    ----------
    D, T : (m, n) array_like
        Coefficient and target matrices, ``m >= n``.  ``D`` must have full
        column rank and ``T^T T`` must be nonsingular.

    Returns
    -------
    X : (n, n) ndarray
        The SPD solution of ``X @ D.T @ D @ X = T.T @ T``.

    Raises
    ------
    RankDeficient
        ``D^T D`` is not numerically positive definite.
    SingularTarget
        ``T^T T`` has an eigenvalue below ``1e-13 * lambda_max``.
    """
    D = mk.as_matrix(D, "D")
    T = mk.as_matrix(T, "T")
    if D.shape != T.shape:
        raise DimensionMismatch(f"D {D.shape} and T {T.shape} must have equal shapes")
    m, n = D.shape
    if m < n:
        raise DimensionMismatch(f"need m >= n, got {D.shape}")

    try:
        L = mk.cholesky(D.T @ D)
    except NotPositiveDefinite as exc:
        raise RankDeficient(f"D^T D is not positive definite: {exc}") from None

    N = T.T @ T
    w, V = mk.sym_eigen(L.T @ N @ L)
    if w[-1] <= 0.0 or w[0] <= SINGULAR_TOL * w[-1]:
        raise SingularTarget(
            f"T^T T is singular: eigenvalue {w[0]:.3e} vs lambda_max {w[-1]:.3e}"
        )
    Z = mk.symmetrize((V * np.sqrt(w)) @ V.T)

    W = mk.solve_upper_t(L, Z)
    X = mk.solve_upper_t(L, W.T).T
    return mk.symmetrize(X)
