"""The two building blocks: PDTLS and the Newton-Schulz inverse update.

PDTLS returns the SPD minimizer of ``tr((DX - T)^T (D - T X^{-1}))``; it
satisfies the Riccati equation ``X D^T D X = T^T T``.  Newton-Schulz
squares the residual ``I - XY`` at every step.
"""
import numpy as np

from nmesolve.matkernel import fro_norm, newton_schulz_step
from nmesolve.pdtls import pdtls_chol, pdtls_objective


def main():
    rng = np.random.default_rng(0)
    D = rng.standard_normal((8, 4)) + 2 * np.eye(8, 4)
    T = rng.standard_normal((8, 4)) + 2 * np.eye(8, 4)
    X = pdtls_chol(D, T)
    print("PDTLS eigenvalues:", np.round(np.linalg.eigvalsh(X), 4))
    print("Riccati residual:", f"{fro_norm(X @ D.T @ D @ X - T.T @ T):.1e}")
    f0 = pdtls_objective(X, D, T)
    worse = pdtls_objective(X + 0.01 * np.eye(4), D, T)
    print(f"objective at X: {f0:.6f}, after a small shift: {worse:.6f}")

    Y = np.eye(4) / fro_norm(X)
    for k in range(1, 9):
        Y = newton_schulz_step(Y, X)
        print(f"NS step {k}: ||I - XY||_F = {fro_norm(np.eye(4) - X @ Y):.2e}")


if __name__ == "__main__":
    main()
