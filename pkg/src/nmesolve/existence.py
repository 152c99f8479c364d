"""Solvability checks for the three equation families.

Checks for cases 1 and 3 consume a factor witness ``(L, N_1[, N_2])`` and
test column orthogonality; checks for case 2 work directly on ``A`` through
its singular values.  Matrix inequalities ``M < cI`` are decided as
``lambda_max(M) < c`` with the slack reported, and a tie at machine
precision counts as a failure.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from scipy.optimize import brentq

from . import matkernel as mk
from .errors import DimensionMismatch, InvalidAlpha, InvalidInput

ORTHO_TOL = 1e-10
ALPHA_XTOL = 1e-12


@dataclass(frozen=True, eq=False)
class FactorWitness:
    L: np.ndarray
    N_list: List[np.ndarray]
    Q: np.ndarray

    def __post_init__(self):
        L = mk.as_matrix(self.L, "L")
        Q = mk.as_symmetric(self.Q, "Q")
        Ns = [mk.as_matrix(N, "N") for N in self.N_list]
        if not 1 <= len(Ns) <= 2:
            raise InvalidInput("a witness carries one or two N factors")
        n = Q.shape[0]
        for M in [L] + Ns:
            if M.shape != (n, n):
                raise DimensionMismatch(f"factor shape {M.shape} does not match Q ({n}x{n})")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "N_list", Ns)


@dataclass(frozen=True)
class ExistenceCertificate:
    alpha: float
    sigma_min: float
    sigma_max: float
    margins: Dict[str, float]

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "margins": dict(self.margins),
        }


def offdiag_ratio(M):
    """Largest off-diagonal magnitude relative to ``||M||_F``."""
    M = np.asarray(M, dtype=float)
    scale = mk.fro_norm(M)
    off = np.abs(M - np.diag(np.diag(M)))
    if scale == 0.0:
        return 0.0
    return float(off.max() / scale)


def theorem2_matrix(w):
    """``Q^{-1/2} (L^T L + N^T N) Q^{-1/2}`` for a one-factor witness."""
    if len(w.N_list) != 1:
        raise InvalidInput("case 1 witness needs exactly one N factor")
    R = mk.spd_power(w.Q, -0.5)
    (N,) = w.N_list
    return R @ w.L.T @ w.L @ R + R @ N.T @ N @ R


def check_theorem2(w, tol=ORTHO_TOL):
    """Case 1 condition: the scaled Gram sum is diagonal."""
    return offdiag_ratio(theorem2_matrix(w)) <= tol


def theorem1_gram(w):
    """Gram matrix of the stack ``[L; N1; N2] Q^{-1/2}``."""
    if len(w.N_list) != 2:
        raise InvalidInput("case 3 witness needs exactly two N factors")
    R = mk.spd_power(w.Q, -0.5)
    stack = np.vstack([w.L @ R] + [N @ R for N in w.N_list])
    return stack.T @ stack


def check_theorem1(w, s=None, t1=None, t2=None, tol=ORTHO_TOL):
    """Case 3 condition: ``[L; N1; N2] Q^{-1/2}`` has orthogonal columns.

    ``s``, ``t1``, ``t2`` do not enter the test itself; they only fix how
    the witness maps to ``A1``, ``A2`` (see :func:`witness_coefficients`).
    """
    return offdiag_ratio(theorem1_gram(w)) <= tol


def witness_coefficients(w, s=1.0, t=(1.0,)):
    """Coefficients ``Ai = (L^T L)^{ti/(2s)} Ni`` built from a witness."""
    G = mk.symmetrize(w.L.T @ w.L)
    return [mk.spd_power(G, ti / (2.0 * s)) @ N for ti, N in zip(t, w.N_list)]


def _lower_alpha(sigma):
    return lambda a: a * np.sqrt(a - 1.0) - sigma


def _upper_alpha(sigma):
    return lambda a: np.sqrt(2.0 * a) * (a - 1.0) - sigma


def _invert_increasing(g, sigma):
    # Both bounds equal 2 at alpha = 2 and exceed sigma at alpha = sigma + 1.
    if sigma <= 2.0:
        return 2.0
    return brentq(g(sigma), 2.0, sigma + 1.0, xtol=ALPHA_XTOL, rtol=4 * np.finfo(float).eps)


def theorem3_margins(A, alpha):
    """Slacks of the three sufficient conditions; all must be positive."""
    A = mk.as_matrix(A, "A")
    if not alpha > 2:
        raise InvalidAlpha(f"alpha must exceed 2, got {alpha}")
    lam = np.clip(mk.sym_eigen(A @ A.T).values, 0.0, None)
    lower = lam[0] - alpha**2 * (alpha - 1.0)
    middle = 1.0 - np.max(np.sqrt(lam / (alpha - 1.0)) - lam / alpha**2)
    norm2_sq = lam[-1]
    upper = 1.0 - norm2_sq / (2.0 * alpha * (alpha - 1.0) ** 2)
    return {"lower_bound": float(lower), "middle": float(middle), "norm": float(upper)}


def check_theorem3(A, alpha):
    """Case 2 sufficient conditions at a given ``alpha > 2``.

    Returns
    -------
    ok : bool
    certificate : ExistenceCertificate
        Carries the per-condition slacks whether or not ``ok`` holds.
    """
    margins = theorem3_margins(A, alpha)
    sv = mk.singular_values(A)
    cert = ExistenceCertificate(float(alpha), float(sv[0]), float(sv[-1]), margins)
    return all(v > 0 for v in margins.values()), cert


def alpha_interval(sigma_min, sigma_max):
    """Open interval of ``alpha > 2`` that brackets every singular value, or None."""
    lo = _invert_increasing(_upper_alpha, sigma_max)
    hi = _invert_increasing(_lower_alpha, sigma_min)
    if not hi > lo:
        return None
    return lo, hi


def find_alpha_theorem4(A) -> Optional[ExistenceCertificate]:
    """Search for ``alpha > 2`` with every singular value of ``A`` inside
    ``(alpha sqrt(alpha - 1), sqrt(2 alpha) (alpha - 1))``.

    Both bounds increase in ``alpha``, so the feasible set is an interval.
    The midpoint is returned as certificate; ``None`` when it is empty.
    """
    sv = mk.singular_values(A)
    interval = alpha_interval(float(sv[0]), float(sv[-1]))
    if interval is None:
        return None
    alpha = 0.5 * (interval[0] + interval[1])
    margins = theorem3_margins(A, alpha)
    margins["interval_low"] = interval[0]
    margins["interval_high"] = interval[1]
    return ExistenceCertificate(alpha, float(sv[0]), float(sv[-1]), margins)
