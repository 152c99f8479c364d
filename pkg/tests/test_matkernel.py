import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import fractional_matrix_power, sqrtm

from nmesolve import matkernel as mk
from nmesolve.errors import DimensionMismatch, InvalidInput, NoConvergence, NotPositiveDefinite

from conftest import random_spd


class TestInputChecks:
    def test_rejects_vector(self):
        with pytest.raises(InvalidInput):
            mk.as_matrix(np.ones(3))

    def test_rejects_nan(self):
        M = np.eye(2)
        M[0, 1] = np.nan
        with pytest.raises(InvalidInput):
            mk.as_matrix(M)

    def test_rejects_nonsquare_symmetric(self):
        with pytest.raises((InvalidInput, DimensionMismatch)):
            mk.as_symmetric(np.ones((2, 3)))

    def test_symmetrize(self):
        M = np.array([[1.0, 2.0], [0.0, 1.0]])
        np.testing.assert_array_equal(mk.symmetrize(M), [[1, 1], [1, 1]])


class TestCholesky:
    def test_matches_numpy(self, rng):
        M = random_spd(rng, 6)
        L = mk.cholesky(M)
        np.testing.assert_allclose(L, np.linalg.cholesky(M), atol=1e-14)
        assert np.allclose(np.triu(L, 1), 0.0)

    def test_indefinite(self):
        with pytest.raises(NotPositiveDefinite):
            mk.cholesky(np.diag([1.0, -1.0]))

    def test_tiny_pivot(self):
        with pytest.raises(NotPositiveDefinite):
            mk.cholesky(np.diag([1.0, 1e-16]))

    def test_is_spd(self):
        assert mk.is_spd(np.eye(3))
        assert not mk.is_spd(np.diag([1.0, 0.0]))


class TestJacobi:
    def test_agrees_with_lapack(self, rng):
        M = random_spd(rng, 8, -3.0, 5.0)
        w_j, V_j = mk.jacobi_eigen(M)
        w_l = np.linalg.eigvalsh(M)
        np.testing.assert_allclose(w_j, w_l, atol=1e-12)
        np.testing.assert_allclose(V_j.T @ V_j, np.eye(8), atol=1e-12)
        np.testing.assert_allclose((V_j * w_j) @ V_j.T, M, atol=1e-12)

    def test_values_ascending(self, rng):
        w, _ = mk.jacobi_eigen(random_spd(rng, 5))
        assert np.all(np.diff(w) >= 0)

    def test_diagonal_input(self):
        w, V = mk.jacobi_eigen(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_array_equal(w, [1.0, 2.0, 3.0])
        np.testing.assert_array_equal(np.abs(V), np.eye(3)[:, [1, 2, 0]])

    def test_sweep_cap(self, rng):
        with pytest.raises(NoConvergence):
            mk.jacobi_eigen(random_spd(rng, 10, -1, 1), max_sweeps=1, off_tol=1e-30)

    def test_backend_switch(self, rng):
        M = random_spd(rng, 4)
        a = mk.sym_eigen(M, method="lapack")
        b = mk.sym_eigen(M, method="jacobi")
        np.testing.assert_allclose(a.values, b.values, atol=1e-13)

    def test_unknown_backend(self):
        with pytest.raises(InvalidInput):
            mk.sym_eigen(np.eye(2), method="qr")


class TestSpdPower:
    @pytest.mark.parametrize("p", [0.5, -0.5, 1.0 / 3.0, 2.0, -2.0, 0.2])
    def test_against_scipy(self, rng, p):
        M = random_spd(rng, 5, 0.5, 4.0)
        np.testing.assert_allclose(mk.spd_power(M, p), fractional_matrix_power(M, p).real,
                                   rtol=1e-11, atol=1e-12)

    def test_sqrt_squares_back(self, rng):
        M = random_spd(rng, 7)
        R = mk.spd_power(M, 0.5)
        np.testing.assert_allclose(R @ R, M, atol=1e-13)
        np.testing.assert_allclose(R, sqrtm(M).real, atol=1e-12)

    def test_zero_power_is_identity(self, rng):
        np.testing.assert_allclose(mk.spd_power(random_spd(rng, 4), 0.0), np.eye(4), atol=1e-14)

    def test_does_not_clamp(self):
        with pytest.raises(NotPositiveDefinite):
            mk.spd_power(np.diag([1.0, -1e-3]), 0.5)

    def test_near_singular_rejected(self):
        with pytest.raises(NotPositiveDefinite):
            mk.spd_power(np.diag([1.0, 1e-15]), -1.0)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8),
           p=st.floats(-2, 2), q=st.floats(-2, 2))
    def test_power_law(self, seed, n, p, q):
        M = random_spd(np.random.default_rng(seed), n)
        lhs = mk.spd_power(M, p) @ mk.spd_power(M, q)
        np.testing.assert_allclose(lhs, mk.spd_power(M, p + q), rtol=1e-10, atol=1e-12)


class TestNewtonSchulz:
    def test_identity_property(self, rng):
        X = random_spd(rng, 6)
        Y = np.eye(6) / mk.fro_norm(X)
        E = np.eye(6) - X @ Y
        Y1 = mk.newton_schulz_step(Y, X)
        np.testing.assert_allclose(np.eye(6) - X @ Y1, E @ E, atol=1e-14)

    def test_fixed_point_is_inverse(self, rng):
        X = random_spd(rng, 4)
        Xi = np.linalg.inv(X)
        np.testing.assert_allclose(mk.newton_schulz_step(Xi, X), Xi, atol=1e-13)

    def test_output_symmetric(self, rng):
        X = random_spd(rng, 5)
        Y1 = mk.newton_schulz_step(np.eye(5) * 0.3, X)
        np.testing.assert_array_equal(Y1, Y1.T)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            mk.newton_schulz_step(np.eye(2), np.eye(3))


class TestMisc:
    def test_singular_values(self, rng):
        A = rng.standard_normal((5, 5))
        np.testing.assert_allclose(mk.singular_values(A),
                                   np.sort(np.linalg.svd(A, compute_uv=False)), rtol=1e-10)

    def test_fro_norm(self):
        assert mk.fro_norm(np.array([[3.0, 0.0], [0.0, 4.0]])) == 5.0

    def test_spd_inverse(self, rng):
        M = random_spd(rng, 5)
        np.testing.assert_allclose(mk.spd_inverse(M) @ M, np.eye(5), atol=1e-13)

    def test_triangular_solves(self, rng):
        M = random_spd(rng, 4)
        L = mk.cholesky(M)
        B = rng.standard_normal((4, 2))
        np.testing.assert_allclose(L @ mk.solve_lower(L, B), B, atol=1e-13)
        np.testing.assert_allclose(L.T @ mk.solve_upper_t(L, B), B, atol=1e-13)


class TestDocumentedExamples:
    def test_cholesky_examples(self):
        np.testing.assert_array_equal(mk.cholesky(np.eye(3)), np.eye(3))
        np.testing.assert_array_equal(mk.cholesky(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
        L = mk.cholesky(np.array([[4.0, 2.0], [2.0, 3.0]]))
        np.testing.assert_allclose(L, [[2.0, 0.0], [1.0, np.sqrt(2.0)]], atol=1e-15)

    @pytest.mark.parametrize("method", ["lapack", "jacobi"])
    def test_eigen_examples(self, method):
        np.testing.assert_allclose(mk.sym_eigen(np.diag([3.0, 1.0, 2.0]), method).values, [1, 2, 3])
        np.testing.assert_allclose(mk.sym_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]), method).values,
                                   [-1, 1], atol=1e-15)

    @pytest.mark.parametrize("method", ["lapack", "jacobi"])
    def test_eigen_contracts(self, rng, method):
        n = 8
        G = rng.standard_normal((n, n))
        M = G + G.T
        w, V = mk.sym_eigen(M, method)
        assert np.linalg.norm(V.T @ V - np.eye(n)) <= 1e-12 * n
        assert np.linalg.norm((V * w) @ V.T - M) <= 1e-11 * max(1.0, np.linalg.norm(M))

    def test_power_examples(self):
        np.testing.assert_allclose(mk.spd_power(np.eye(3), 0.37), np.eye(3), atol=1e-15)
        np.testing.assert_allclose(mk.spd_power(np.diag([4.0, 9.0]), 0.5), np.diag([2.0, 3.0]), atol=1e-15)

    def test_power_minus_one(self, rng):
        M = random_spd(rng, 10, 0.1, 10.0)
        assert np.linalg.norm(mk.spd_power(M, -1.0) @ M - np.eye(10)) <= 1e-10 * np.sqrt(10)

    def test_sqrt_then_square_n10(self, rng):
        M = random_spd(rng, 10, 0.1, 10.0)
        R = mk.spd_power(M, 0.5)
        assert np.linalg.norm(R @ R - M) <= 1e-10 * np.linalg.norm(M)

    def test_newton_schulz_examples(self):
        np.testing.assert_array_equal(mk.newton_schulz_step(np.eye(3), np.eye(3)), np.eye(3))
        assert mk.newton_schulz_step([[0.4]], [[2.0]])[0, 0] == pytest.approx(0.48, abs=1e-15)

    def test_newton_schulz_squaring_bound(self, rng):
        X = random_spd(rng, 6)
        Y = np.eye(6) / np.linalg.norm(X, 1)
        e0 = np.linalg.norm(np.eye(6) - X @ Y, 2)
        assert e0 < 1
        for k in range(1, 6):
            Y = mk.newton_schulz_step(Y, X)
            assert np.linalg.norm(np.eye(6) - X @ Y, 2) <= e0 ** (2**k) + 1e-14

    def test_fro_norm_examples(self):
        assert mk.fro_norm(np.zeros((3, 3))) == 0.0
        assert mk.fro_norm(np.eye(4)) == 2.0
        assert mk.fro_norm(np.array([[3.0, 4.0], [0.0, 0.0]])) == 5.0

    def test_singular_value_examples(self):
        np.testing.assert_allclose(mk.singular_values(np.eye(3)), [1, 1, 1])
        np.testing.assert_allclose(mk.singular_values(np.diag([-2.0, 5.0])), [2, 5])


class TestProperties:
    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 100))
    def test_cholesky_reconstruction(self, seed, n):
        M = random_spd(np.random.default_rng(seed), n, 0.01, 100.0)
        L = mk.cholesky(M)
        assert np.linalg.norm(L @ L.T - M) <= 1e-12 * np.linalg.norm(M)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12))
    def test_newton_schulz_identity(self, seed, n):
        rng = np.random.default_rng(seed)
        X = random_spd(rng, n, 0.5, 4.0)
        Y = random_spd(rng, n, 0.01, 0.5)
        R = np.eye(n) - X @ Y
        lhs = np.eye(n) - X @ mk.newton_schulz_step(Y, X)
        assert np.linalg.norm(lhs - R @ R) <= 1e-12 * (1 + np.linalg.norm(R) ** 2)
