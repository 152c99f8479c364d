"""SPD solutions of nonlinear matrix equations via coupled Newton-Schulz /
positive definite total least squares iterations."""
from .baselines import fixed_point, fixed_point_case1, fixed_point_case2, fixed_point_case3
from .bench import PerfRecord, ProfileCurve, dolan_more, emit, run_suite
from .errors import (
    Breakdown,
    DimensionMismatch,
    EmptyInput,
    InvalidAlpha,
    InvalidInput,
    MatrixEquationError,
    NoConvergence,
    NotPositiveDefinite,
    NumericalError,
    RankDeficient,
    SingularTarget,
    UnknownSolverId,
)
from .existence import (
    ExistenceCertificate,
    FactorWitness,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    find_alpha_theorem4,
)
from .matkernel import (
    cholesky,
    fro_norm,
    newton_schulz_step,
    singular_values,
    spd_power,
    sym_eigen,
)
from .pdtls import pdtls_chol, pdtls_objective
from .probgen import GeneratedProblem, fixtures, gen_case1, gen_case2, gen_case3
from .solvers import (
    EquationSpec,
    SolveReport,
    SolverConfig,
    solve,
    solve_case1,
    solve_case2,
    solve_case3,
    solve_general,
    stop_check,
    true_residual,
)

__version__ = "0.1.0"

__all__ = [
    "Breakdown",
    "DimensionMismatch",
    "EmptyInput",
    "EquationSpec",
    "ExistenceCertificate",
    "FactorWitness",
    "GeneratedProblem",
    "InvalidAlpha",
    "InvalidInput",
    "MatrixEquationError",
    "NoConvergence",
    "NotPositiveDefinite",
    "NumericalError",
    "PerfRecord",
    "ProfileCurve",
    "RankDeficient",
    "SingularTarget",
    "SolveReport",
    "SolverConfig",
    "UnknownSolverId",
    "check_theorem1",
    "check_theorem2",
    "check_theorem3",
    "cholesky",
    "dolan_more",
    "emit",
    "find_alpha_theorem4",
    "fixed_point",
    "fixed_point_case1",
    "fixed_point_case2",
    "fixed_point_case3",
    "fixtures",
    "fro_norm",
    "gen_case1",
    "gen_case2",
    "gen_case3",
    "newton_schulz_step",
    "pdtls_chol",
    "pdtls_objective",
    "run_suite",
    "singular_values",
    "solve",
    "solve_case1",
    "solve_case2",
    "solve_case3",
    "solve_general",
    "spd_power",
    "stop_check",
    "sym_eigen",
    "true_residual",
]
