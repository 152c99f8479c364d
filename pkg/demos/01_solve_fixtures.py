"""Solve the literature fixtures for all three equation families.

Run with ``python demos/01_solve_fixtures.py``.  For every fixture the
coupled solver is compared against the plain fixed-point baseline, and the
residual of the defining equation is recomputed from scratch.
"""
import numpy as np

from nmesolve import probgen
from nmesolve.baselines import fixed_point
from nmesolve.errors import NumericalError
from nmesolve.solvers import solve


def describe(runner, spec):
    try:
        rep = runner(spec)
    except NumericalError as exc:
        return f"breakdown: {exc}", None
    state = "converged" if rep.converged else "hit cap"
    return f"{state:9s} it={rep.iterations:3d} E={rep.E:.2e} true={rep.true_residual:.2e}", rep


def main():
    for p in probgen.fixtures():
        print(f"== {p.problem_id} (n={p.n}, s={p.spec.s:g}, t={p.spec.t})")
        text, rep = describe(solve, p.spec)
        print("   nonlinear  ", text)
        text, base = describe(fixed_point, p.spec)
        print("   fixed-point", text)
        if rep is not None and base is not None and rep.converged and base.converged:
            diff = np.linalg.norm(rep.X - base.X) / np.linalg.norm(rep.X)
            print(f"   relative gap between solutions: {diff:.1e}")

    # The printed Case 1 solution lies outside X <= Q, so it cannot be exact.
    spec = probgen.fixture("case1-ex1").spec
    X = solve(spec).X
    np.set_printoptions(precision=4, suppress=True)
    print("\ncase1-ex1 computed X:\n", X)
    print("printed X (for reference):\n", probgen.TABLE2_EX1_X)


if __name__ == "__main__":
    main()
