"""Coupled Newton-Schulz / PDTLS solvers for three nonlinear matrix equations.

Equations handled (all matrices real ``n x n``, ``Q`` SPD)::

    case "1"        X + A^T X^{-1} A = Q
    case "2"        X - A^T X^{-2} A = Q
    case "3"        X^s + A1^T X^{-t1} A1 + A2^T X^{-t2} A2 = Q
    case "general"  X^s + sum_i Ai^T X^{-ti} Ai = Q

Each solver replaces the inverse powers by an auxiliary SPD matrix ``Y``
that tracks ``X^{-1}`` through Newton-Schulz steps, and recovers ``X`` (or
``X^s``) from a PDTLS subproblem, which keeps every iterate SPD.
"""
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import matkernel as mk
from .errors import Breakdown, DimensionMismatch, InvalidInput, NotPositiveDefinite, SingularTarget
from .pdtls import pdtls_chol

CASES = ("1", "2", "3", "general")
INIT_STRATEGIES = ("qbased", "identity", "custom")


@dataclass(frozen=True, eq=False)
class EquationSpec:
    """One instance of the equation family.

    Use the ``case1`` / ``case2`` / ``case3`` / ``general`` constructors
    rather than building instances by hand.
    """

    case: str
    A: Tuple[np.ndarray, ...]
    Q: np.ndarray
    s: float = 1.0
    t: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.case not in CASES:
            raise InvalidInput(f"unknown case {self.case!r}")
        Q = mk.as_symmetric(self.Q, "Q")
        n = Q.shape[0]
        As = tuple(mk.as_matrix(a, f"A[{i}]") for i, a in enumerate(self.A))
        if not As:
            raise InvalidInput("at least one coefficient matrix is required")
        for i, a in enumerate(As):
            if a.shape != (n, n):
                raise DimensionMismatch(f"A[{i}] has shape {a.shape}, Q is {n}x{n}")
        if not mk.is_spd(Q):
            raise NotPositiveDefinite("Q must be symmetric positive definite")
        t = tuple(float(v) for v in self.t)
        s = float(self.s)
        if self.case in ("1", "2"):
            if len(As) != 1:
                raise InvalidInput(f"case {self.case} takes exactly one A")
            t = (1.0,) if self.case == "1" else (2.0,)
            s = 1.0
        else:
            if self.case == "3" and len(As) != 2:
                raise InvalidInput("case 3 takes exactly two coefficient matrices")
            if len(t) != len(As):
                raise InvalidInput(f"{len(As)} coefficient matrices but {len(t)} exponents")
            if not (np.isfinite(s) and s > 0):
                raise InvalidInput(f"s must be positive, got {s}")
            if any(not (0.0 < v <= 1.0) for v in t):
                raise InvalidInput(f"exponents t must lie in (0, 1], got {t}")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "A", As)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @classmethod
    def case1(cls, A, Q):
        return cls("1", (A,), Q)

    @classmethod
    def case2(cls, A, Q):
        return cls("2", (A,), Q)

    @classmethod
    def case3(cls, A1, A2, Q, s, t1, t2):
        return cls("3", (A1, A2), Q, s, (t1, t2))

    @classmethod
    def general(cls, A_list, t_list, s, Q):
        return cls("general", tuple(A_list), Q, s, tuple(t_list))

    @property
    def n(self):
        return self.Q.shape[0]

    @property
    def m(self):
        return len(self.A)


@dataclass
class SolverConfig:
    """Tolerances, iteration cap and starting point.

    The iteration stops once ``E <= delta + eps * scale``.  ``init`` is one
    of ``"qbased"`` (``X0 = Q``, ``Y0 = Q^{-1}``; for the power family
    ``Y0 = (gamma + 1) / (2 gamma) * Q^{-1/s}``), ``"identity"``, or
    ``"custom"`` with ``X0`` and ``Y0`` given.
    """

    delta: float = 1e-10
    eps: float = 1e-12
    max_iter: int = 500
    init: str = "qbased"
    X0: Optional[np.ndarray] = None
    Y0: Optional[np.ndarray] = None
    gamma: float = 1.0
    track_spd: bool = False

    def __post_init__(self):
        if self.delta < 0 or self.eps < 0:
            raise InvalidInput("delta and eps must be nonnegative")
        if self.delta == 0 and self.eps == 0:
            raise InvalidInput("delta and eps cannot both be zero")
        if int(self.max_iter) < 1:
            raise InvalidInput("max_iter must be a positive integer")
        self.max_iter = int(self.max_iter)
        if self.init not in INIT_STRATEGIES:
            raise InvalidInput(f"init must be one of {INIT_STRATEGIES}")
        if self.init == "custom" and (self.X0 is None or self.Y0 is None):
            raise InvalidInput("custom init needs both X0 and Y0")
        if not self.gamma > 0:
            raise InvalidInput("gamma must be positive")


@dataclass
class SolveReport:
    X: np.ndarray
    E: float
    true_residual: float
    iterations: int
    converged: bool
    residual_history: List[float]
    wall_time: float
    Y: np.ndarray
    U: Optional[np.ndarray] = None
    min_eig_history: Optional[List[float]] = None
    case: str = ""
    solver: str = ""

    def to_dict(self, include_x=False):
        d = {
            "case": self.case,
            "n": int(self.X.shape[0]),
            "solver": self.solver,
            "converged": bool(self.converged),
            "iterations": int(self.iterations),
            "E": float(self.E),
            "true_residual": float(self.true_residual),
            "time_s": float(self.wall_time),
        }
        if include_x:
            d["X"] = self.X.tolist()
        return d


def stop_check(E, scale, cfg):
    """Mixed absolute/relative stopping rule ``E <= delta + eps * scale``."""
    return E <= cfg.delta + cfg.eps * scale


def lhs_minus_q(spec, X):
    """Residual matrix of the defining equation, using exact powers of ``X``."""
    X = mk.as_symmetric(X, "X")
    w, V = mk.sym_eigen(X)
    if w[-1] <= 0.0 or w[0] <= mk.POWER_EIG_TOL * w[-1]:
        raise NotPositiveDefinite(f"X is not positive definite (lambda_min={w[0]:.3e})")

    def power(p):
        return (V * w**p) @ V.T

    if spec.case == "1":
        (A,) = spec.A
        R = X + A.T @ power(-1.0) @ A
    elif spec.case == "2":
        (A,) = spec.A
        R = X - A.T @ power(-2.0) @ A
    else:
        R = power(spec.s)
        for Ai, ti in zip(spec.A, spec.t):
            R = R + Ai.T @ power(-ti) @ Ai
    return R - spec.Q


def true_residual(spec, X):
    """Frobenius residual of the defining equation at ``X`` (bypasses ``Y``)."""
    return mk.fro_norm(lhs_minus_q(spec, X))


def _custom_pair(spec, cfg):
    X0 = mk.as_symmetric(cfg.X0, "X0")
    Y0 = mk.as_symmetric(cfg.Y0, "Y0")
    if X0.shape != spec.Q.shape or Y0.shape != spec.Q.shape:
        raise DimensionMismatch("custom X0/Y0 must match the dimension of Q")
    if not (mk.is_spd(X0) and mk.is_spd(Y0)):
        raise NotPositiveDefinite("custom X0 and Y0 must be SPD")
    return X0, Y0


def initial_pair(spec, cfg):
    """Starting ``(X0, Y0)`` for ``spec`` under ``cfg.init``."""
    if cfg.init == "custom":
        return _custom_pair(spec, cfg)
    n = spec.n
    if cfg.init == "identity":
        return np.eye(n), np.eye(n)
    if spec.case in ("1", "2"):
        return spec.Q.copy(), mk.spd_inverse(spec.Q)
    factor = (cfg.gamma + 1.0) / (2.0 * cfg.gamma)
    return mk.spd_power(spec.Q, 1.0 / spec.s), factor * mk.spd_power(spec.Q, -1.0 / spec.s)


def _pdtls_step(D, T, what):
    try:
        return pdtls_chol(D, T)
    except SingularTarget as exc:
        raise Breakdown(f"{what}: {exc}") from exc


class _Trace:
    """Per-solve bookkeeping shared by all solvers."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.history = []
        self.min_eigs = [] if cfg.track_spd else None
        self.start = time.perf_counter()

    def record(self, E, X):
        self.history.append(float(E))
        if self.min_eigs is not None:
            self.min_eigs.append(mk.min_eig(X))

    def report(self, spec, solver, X, Y, E, converged, U=None):
        wall = time.perf_counter() - self.start
        return SolveReport(
            X=X,
            E=float(E),
            true_residual=true_residual(spec, X),
            iterations=len(self.history),
            converged=bool(converged),
            residual_history=self.history,
            wall_time=wall,
            Y=Y,
            U=U,
            min_eig_history=self.min_eigs,
            case=spec.case,
            solver=solver,
        )


def _run_case1(spec, cfg):
    (A,) = spec.A
    Q = spec.Q
    I = np.eye(spec.n)
    trace = _Trace(cfg)
    X, Y = initial_pair(spec, cfg)
    # Y is refreshed right after each X update, so E is measured against
    # the inverse estimate of the current X rather than the one that built it.
    Y = mk.newton_schulz_step(Y, X)
    E, converged = np.inf, False
    for k in range(1, cfg.max_iter + 1):
        X = _pdtls_step(I, Q - A.T @ Y @ A, f"iteration {k}")
        Y = mk.newton_schulz_step(Y, X)
        E = mk.fro_norm(X + A.T @ Y @ A - Q)
        trace.record(E, X)
        if stop_check(E, mk.fro_norm(X), cfg):
            converged = True
            break
    return trace.report(spec, "nonlinear1", X, Y, E, converged)


def _run_case2(spec, cfg):
    (A,) = spec.A
    Q = spec.Q
    I = np.eye(spec.n)
    trace = _Trace(cfg)
    X, Y = initial_pair(spec, cfg)
    E, converged = np.inf, False
    for k in range(1, cfg.max_iter + 1):
        Xinv = mk.spd_inverse(X)
        P = A.T @ Y @ Y @ A + Q
        Y = _pdtls_step(X, 2.0 * I - P @ Xinv, f"iteration {k}")
        X = mk.symmetrize(X @ (2.0 * I - Y @ X))
        if not mk.is_spd(X):
            raise NotPositiveDefinite(f"X left the SPD cone at iteration {k}")
        E = mk.fro_norm(X - A.T @ Y @ Y @ A - Q)
        trace.record(E, X)
        if stop_check(E, mk.fro_norm(X), cfg):
            converged = True
            break
    return trace.report(spec, "nonlinear2", X, Y, E, converged)


def _weighted_sum(As, ts, Y):
    w, V = mk.sym_eigen(Y)
    if w[-1] <= 0.0 or w[0] <= mk.POWER_EIG_TOL * w[-1]:
        raise NotPositiveDefinite(f"inverse estimate Y lost definiteness (lambda_min={w[0]:.3e})")
    S = np.zeros_like(Y)
    for Ai, ti in zip(As, ts):
        S = S + Ai.T @ mk.symmetrize((V * w**ti) @ V.T) @ Ai
    return S


def _run_power_family(spec, cfg, solver):
    Q = spec.Q
    I = np.eye(spec.n)
    trace = _Trace(cfg)
    X, Y = initial_pair(spec, cfg)
    U = mk.spd_power(X, spec.s) if cfg.init == "custom" else None
    S = _weighted_sum(spec.A, spec.t, Y)
    E, converged = np.inf, False
    for k in range(1, cfg.max_iter + 1):
        U = _pdtls_step(I, Q - S, f"iteration {k}")
        X = mk.spd_power(U, 1.0 / spec.s)
        Y = mk.newton_schulz_step(Y, X)
        S = _weighted_sum(spec.A, spec.t, Y)
        E = mk.fro_norm(U + S - Q)
        trace.record(E, X)
        if stop_check(E, mk.fro_norm(U), cfg):
            converged = True
            break
    return trace.report(spec, solver, X, Y, E, converged, U=U)


def _as_spec(case, A, Q):
    return EquationSpec(case, (A,), Q)


def solve_case1(A, Q, cfg=None):
    """Solve ``X + A^T X^{-1} A = Q`` for SPD ``X``.

    Returns a :class:`SolveReport`; ``converged`` is False if ``max_iter``
    was reached.

    Raises
    ------
    Breakdown
        The PDTLS target ``Q - A^T Y A`` became singular.
    """
    return _run_case1(_as_spec("1", A, Q), cfg or SolverConfig())


def solve_case2(A, Q, cfg=None):
    """Solve ``X - A^T X^{-2} A = Q`` for SPD ``X``.

    Here ``Y`` comes from the PDTLS subproblem and ``X`` from a
    Newton-Schulz step, so ``X`` is not guaranteed to stay SPD;
    :class:`~nmesolve.errors.NotPositiveDefinite` is raised as soon as it
    leaves the cone.
    """
    return _run_case2(_as_spec("2", A, Q), cfg or SolverConfig())


def solve_case3(A1, A2, Q, s, t1, t2, cfg=None):
    """Solve ``X^s + A1^T X^{-t1} A1 + A2^T X^{-t2} A2 = Q`` for SPD ``X``.

    ``report.U`` holds the final ``X^s`` estimate; the stopping scale is
    ``||U||_F``.  Identical to :func:`solve_general` with two terms.
    """
    spec = EquationSpec.case3(A1, A2, Q, s, t1, t2)
    return _run_power_family(spec, cfg or SolverConfig(), "nonlinear3")


def solve_general(A_list, t_list, s, Q, cfg=None):
    """Solve ``X^s + sum_i Ai^T X^{-ti} Ai = Q`` for any number of terms."""
    spec = EquationSpec.general(A_list, t_list, s, Q)
    return _run_power_family(spec, cfg or SolverConfig(), "nonlinear3")


def solve(spec, cfg=None):
    """Dispatch on ``spec.case`` to the matching solver."""
    cfg = cfg or SolverConfig()
    if spec.case == "1":
        return _run_case1(spec, cfg)
    if spec.case == "2":
        return _run_case2(spec, cfg)
    return _run_power_family(spec, cfg, "nonlinear3")
