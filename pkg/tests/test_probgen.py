import json

import numpy as np
import pytest

from nmesolve import probgen
from nmesolve.errors import InvalidAlpha, InvalidInput
from nmesolve.matkernel import singular_values
from nmesolve.solvers import true_residual


class TestOrthogonalFactor:
    def test_orthogonal_with_positive_r(self):
        M = np.random.default_rng(0).random((5, 5))
        Qf = probgen.orthogonal_factor(M)
        np.testing.assert_allclose(Qf.T @ Qf, np.eye(5), atol=1e-14)
        R = Qf.T @ M
        assert np.all(np.diag(R) > 0)
        np.testing.assert_allclose(np.tril(R, -1), 0.0, atol=1e-14)

    def test_unique_against_gram_schmidt(self):
        M = np.random.default_rng(1).random((4, 4))
        # Classical Gram-Schmidt gives the positive-R factor directly.
        G = np.zeros_like(M)
        for j in range(4):
            v = M[:, j] - G[:, :j] @ (G[:, :j].T @ M[:, j])
            G[:, j] = v / np.linalg.norm(v)
        np.testing.assert_allclose(probgen.orthogonal_factor(M), G, atol=1e-12)


class TestGenerators:
    @pytest.mark.parametrize("case", ["1", "2", "3"])
    def test_deterministic(self, case):
        a = probgen.generate(case, 5, 42)
        b = probgen.generate(case, 5, 42)
        for x, y in zip(a.spec.A, b.spec.A):
            np.testing.assert_array_equal(x, y)
        assert a.problem_id == b.problem_id == f"case{case}-n5-s42"

    def test_seeds_differ(self):
        a = probgen.generate("1", 4, 0).spec.A[0]
        b = probgen.generate("1", 4, 1).spec.A[0]
        assert not np.allclose(a, b)

    def test_frozen_value(self):
        # Pins the PCG64 stream and the QR sign convention.
        A = probgen.gen_case1(3, 7).spec.A[0]
        np.testing.assert_allclose(A, FROZEN_CASE1_N3_S7, atol=1e-12)

    def test_case2_singular_values_in_band(self):
        p = probgen.gen_case2(6, 3.0, 5)
        lo, hi = probgen.band_limits(3.0)
        sv = singular_values(p.spec.A[0])
        assert lo <= sv[0] and sv[-1] <= hi
        assert p.certificate is not None

    def test_case2_bad_alpha(self):
        with pytest.raises(InvalidAlpha):
            probgen.gen_case2(3, 1.5, 0)

    @pytest.mark.parametrize("n", [0, -1, 2.5])
    def test_bad_n(self, n):
        with pytest.raises(InvalidInput):
            probgen.generate("1", n, 0)

    def test_unknown_case(self):
        with pytest.raises(InvalidInput):
            probgen.generate("7", 3, 0)

    def test_reference_solutions_exact(self):
        assert true_residual(probgen.gen_case1(8, 3).spec, probgen.gen_case1(8, 3).reference_solution) < 1e-13
        p = probgen.gen_case3(8, 5.0, 0.2, 0.5, 3)
        assert true_residual(p.spec, p.reference_solution) < 1e-12


class TestFixtures:
    def test_ids(self):
        ids = [p.problem_id for p in probgen.fixtures()]
        assert ids == ["case1-ex1", "case1-ex2", "case1-ex4", "case2-ex1", "case2-ex2",
                       "case2-ex3", "case2-ex4", "case3-ex1", "case3-ex2"]

    def test_case3_ex1_parameters(self):
        spec = probgen.fixture("case3-ex1").spec
        assert spec.s == 5.0 and spec.t == (0.2, 0.5) and spec.n == 6

    def test_unknown(self):
        with pytest.raises(InvalidInput):
            probgen.fixture("case9-ex1")


class TestSerialization:
    @pytest.mark.parametrize("case", ["1", "2", "3"])
    def test_round_trip(self, tmp_path, case):
        p = probgen.generate(case, 4, 11)
        path = probgen.write_problem(p, tmp_path / case)
        q = probgen.read_problem(path)
        assert q.problem_id == p.problem_id and q.spec.case == p.spec.case
        assert q.spec.t == p.spec.t and q.spec.s == p.spec.s
        for x, y in zip(p.spec.A, q.spec.A):
            np.testing.assert_array_equal(x, y)
        if p.reference_solution is not None:
            np.testing.assert_array_equal(p.reference_solution, q.reference_solution)
        if p.certificate is not None:
            assert q.certificate.alpha == p.certificate.alpha

    def test_fixture_round_trip(self, tmp_path):
        p = probgen.fixture("case3-ex1")
        q = probgen.read_problem(probgen.write_problem(p, tmp_path))
        np.testing.assert_array_equal(p.spec.Q, q.spec.Q)

    def test_bad_manifest(self, tmp_path):
        with pytest.raises(InvalidInput):
            probgen.read_problem(tmp_path / "missing.json")
        (tmp_path / "m.json").write_text(json.dumps({"case": "1"}))
        with pytest.raises(InvalidInput):
            probgen.read_problem(tmp_path / "m.json")
        (tmp_path / "bad.json").write_text("{")
        with pytest.raises(InvalidInput):
            probgen.read_problem(tmp_path / "bad.json")


class TestDocumentedExamples:
    def test_case1_scalar(self):
        p = probgen.gen_case1(1, 9)
        L, N = p.witness.L[0, 0], p.witness.N_list[0][0, 0]
        assert L**2 + N**2 == pytest.approx(1.0, abs=1e-15)
        assert p.spec.A[0][0, 0] == pytest.approx(abs(L) * N, abs=1e-15)
        assert true_residual(p.spec, p.reference_solution) < 1e-15

    def test_case1_witness_margin(self):
        from nmesolve.existence import check_theorem2, offdiag_ratio, theorem2_matrix
        w = probgen.gen_case1(4, 42).witness
        assert check_theorem2(w) and offdiag_ratio(theorem2_matrix(w)) <= 1e-12

    def test_case2_scalar_band(self):
        sv = singular_values(probgen.gen_case2(1, 3.0, 0).spec.A[0])
        assert 4.2426 < sv[0] < 4.8990

    def test_case2_n10(self):
        lo, hi = probgen.band_limits(3.0)
        sv = singular_values(probgen.gen_case2(10, 3.0, 7).spec.A[0])
        assert lo < sv[0] and sv[-1] < hi

    def test_case3_scalar(self):
        w = probgen.gen_case3(1, 2.0, 0.5, 0.5, 3).witness
        total = w.L[0, 0] ** 2 + sum(N[0, 0] ** 2 for N in w.N_list)
        assert total == pytest.approx(1.0, abs=1e-15)

    def test_case3_n5_seed11(self):
        from nmesolve.existence import check_theorem1
        assert check_theorem1(probgen.gen_case3(5, 2.0, 0.5, 0.5, 11).witness)

    def test_fixture_entries(self):
        A = probgen.fixture("case1-ex1").spec.A[0]
        assert A[0, 0] == 0.0955 and A[3, 3] == 0.0609
        p = probgen.fixture("case3-ex1")
        assert p.spec.Q[0, 0] == 105 and p.spec.s == 5 and p.spec.t == (0.2, 0.5)
        A = probgen.fixture("case2-ex3").spec.A[0]
        assert A[0, 0] == -0.1 and A[1, 1] == 0.3

    def test_invariants(self):
        for case in "13":
            assert probgen.generate(case, 3, 0).witness is not None
        assert probgen.generate("2", 3, 0).certificate is not None


class TestLiteralGeneratorForm:
    """``A = (L L^T)^{1/2} N`` as printed yields problems without an SPD
    solution; the ``L^T L`` form used here has ``X = L^T L`` exactly."""

    def test_printed_form_breaks_down(self):
        from nmesolve.baselines import fixed_point
        from nmesolve.errors import NumericalError
        from nmesolve.matkernel import spd_power
        from nmesolve.solvers import EquationSpec, solve
        failures = 0
        for seed in range(20):
            L, N = probgen._orthonormal_stack(10, 2, np.random.default_rng(seed))
            spec = EquationSpec.case1(spd_power(L @ L.T, 0.5) @ N, np.eye(10))
            for runner in (solve, fixed_point):
                try:
                    failures += not runner(spec).converged
                except NumericalError:
                    failures += 1
        assert failures == 40

    def test_fixed_form_has_reference(self):
        p = probgen.gen_case1(6, 0)
        G = p.witness.L.T @ p.witness.L
        np.testing.assert_allclose(p.reference_solution, G, atol=1e-15)


FROZEN_CASE1_N3_S7 = np.array([
    [0.4928329312575387, -0.052528465188455796, -0.3582400322245165],
    [0.08947385280992787, 0.3160012524794129, -0.0013532189361845342],
    [0.4878850947922618, -0.1022158474588851, -0.2462109108744044],
])
