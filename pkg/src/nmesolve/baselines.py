"""Plain fixed-point iterations used as comparison baselines.

These are the direct substitution maps each equation suggests.  They are
stand-ins for published comparator methods and make no claim to reproduce
them.  Stopping rule and report format match :mod:`nmesolve.solvers`.
"""
import numpy as np

from . import matkernel as mk
from .errors import NotPositiveDefinite
from .solvers import EquationSpec, SolverConfig, _Trace, stop_check

STAND_IN_NOTE = "stand-in fixed-point baseline"


def _eig_spd(X, what):
    w, V = mk.sym_eigen(X)
    if w[-1] <= 0.0 or w[0] <= mk.POWER_EIG_TOL * w[-1]:
        raise NotPositiveDefinite(f"{what} left the SPD cone (lambda_min={w[0]:.3e})")
    return w, V


def _run_fp_case1(spec, cfg):
    (A,) = spec.A
    Q = spec.Q
    trace = _Trace(cfg)
    X = Q.copy()
    Xinv = mk.spd_inverse(X)
    E, converged = np.inf, False
    for k in range(1, cfg.max_iter + 1):
        X = mk.symmetrize(Q - A.T @ Xinv @ A)
        w, V = _eig_spd(X, f"iterate {k}")
        Xinv = mk.symmetrize((V / w) @ V.T)
        E = mk.fro_norm(X + A.T @ Xinv @ A - Q)
        trace.record(E, X)
        if stop_check(E, mk.fro_norm(X), cfg):
            converged = True
            break
    return trace.report(spec, "fp1", X, Xinv, E, converged)


def _run_fp_case2(spec, cfg):
    (A,) = spec.A
    Q = spec.Q
    trace = _Trace(cfg)
    X = Q.copy()
    Xinv = mk.spd_inverse(X)
    E, converged = np.inf, False
    for k in range(1, cfg.max_iter + 1):
        X = mk.symmetrize(Q + A.T @ Xinv @ Xinv @ A)
        w, V = _eig_spd(X, f"iterate {k}")
        Xinv = mk.symmetrize((V / w) @ V.T)
        E = mk.fro_norm(X - A.T @ Xinv @ Xinv @ A - Q)
        if not np.isfinite(E):
            raise NotPositiveDefinite(f"iterate {k} overflowed")
        trace.record(E, X)
        if stop_check(E, mk.fro_norm(X), cfg):
            converged = True
            break
    return trace.report(spec, "fp2", X, Xinv, E, converged)


def _power_terms(spec, w, V):
    S = np.zeros_like(spec.Q)
    for Ai, ti in zip(spec.A, spec.t):
        S = S + Ai.T @ mk.symmetrize((V * w**-ti) @ V.T) @ Ai
    return S


def _run_fp_power(spec, cfg):
    Q = spec.Q
    trace = _Trace(cfg)
    X = mk.spd_power(Q, 1.0 / spec.s)
    w, V = _eig_spd(X, "X0")
    S = _power_terms(spec, w, V)
    E, converged = np.inf, False
    for k in range(1, cfg.max_iter + 1):
        base = mk.symmetrize(Q - S)
        wb, Vb = _eig_spd(base, f"base of iterate {k}")
        X = mk.symmetrize((Vb * wb ** (1.0 / spec.s)) @ Vb.T)
        w, V = _eig_spd(X, f"iterate {k}")
        S = _power_terms(spec, w, V)
        Xs = mk.symmetrize((V * w**spec.s) @ V.T)
        E = mk.fro_norm(Xs + S - Q)
        trace.record(E, X)
        if stop_check(E, mk.fro_norm(Xs), cfg):
            converged = True
            break
    return trace.report(spec, "fp3", X, mk.symmetrize((V / w) @ V.T), E, converged)


def fixed_point_case1(A, Q, cfg=None):
    """``X <- Q - A^T X^{-1} A`` from ``X0 = Q``.

    Raises
    ------
    NotPositiveDefinite
        An iterate is not SPD.
    """
    return _run_fp_case1(EquationSpec.case1(A, Q), cfg or SolverConfig())


def fixed_point_case2(A, Q, cfg=None):
    """``X <- Q + A^T X^{-2} A`` from ``X0 = Q``."""
    return _run_fp_case2(EquationSpec.case2(A, Q), cfg or SolverConfig())


def fixed_point_case3(A1, A2, Q, s, t1, t2, cfg=None):
    """``X <- (Q - A1^T X^{-t1} A1 - A2^T X^{-t2} A2)^{1/s}`` from ``X0 = Q^{1/s}``."""
    spec = EquationSpec.case3(A1, A2, Q, s, t1, t2)
    return _run_fp_power(spec, cfg or SolverConfig())


def fixed_point(spec, cfg=None):
    """Dispatch on ``spec.case``; the power family covers cases 3 and general."""
    cfg = cfg or SolverConfig()
    if spec.case == "1":
        return _run_fp_case1(spec, cfg)
    if spec.case == "2":
        return _run_fp_case2(spec, cfg)
    return _run_fp_power(spec, cfg)
