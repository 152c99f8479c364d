"""Seeded random test problems and fixed literature examples.

Random problems use ``numpy.random.default_rng(seed)`` (PCG64) with entries
uniform on [0, 1); orthogonal factors come from a QR factorization whose
``R`` diagonal is made positive, which makes the factor unique.

Cases 1 and 3 are built from an orthonormal column stack ``[L; N1 (; N2)]``
as ``Ai = (L^T L)^{ti/(2s)} Ni``, which has the exact solution
``X = (L^T L)^{1/s}``.  Case 2 draws singular values inside the
certified band of some ``alpha > 2``.
"""
import json
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import matkernel as mk
from .errors import InvalidAlpha, InvalidInput
from .existence import ExistenceCertificate, FactorWitness, find_alpha_theorem4
from .matio import read_matrix, write_matrix
from .solvers import EquationSpec


@dataclass(eq=False)
class GeneratedProblem:
    problem_id: str
    spec: EquationSpec
    case_tag: int
    seed: Optional[int] = None
    witness: Optional[FactorWitness] = None
    certificate: Optional[ExistenceCertificate] = None
    params: Optional[dict] = None
    reference_solution: Optional[np.ndarray] = None

    @property
    def n(self):
        return self.spec.n


def orthogonal_factor(M):
    """Q factor of ``M`` with the diagonal of ``R`` made nonnegative."""
    Qf, R = np.linalg.qr(M)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Qf * signs


def _orthonormal_stack(n, blocks, rng):
    """First ``n`` columns of a random ``blocks*n`` square orthogonal factor,
    split into ``blocks`` row blocks of size ``n``."""
    cols = orthogonal_factor(rng.random((blocks * n, blocks * n)))[:, :n]
    return [cols[i * n:(i + 1) * n] for i in range(blocks)]


def _check_n(n):
    if int(n) != n or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n}")
    return int(n)


def gen_case1(n, seed):
    """Random ``X + A^T X^{-1} A = I`` problem with a factor witness."""
    n = _check_n(n)
    rng = np.random.default_rng(seed)
    L, N = _orthonormal_stack(n, 2, rng)
    G = mk.symmetrize(L.T @ L)
    A = mk.spd_power(G, 0.5) @ N
    I = np.eye(n)
    return GeneratedProblem(
        problem_id=f"case1-n{n}-s{seed}",
        spec=EquationSpec.case1(A, I),
        case_tag=1,
        seed=seed,
        witness=FactorWitness(L, [N], I),
        params={"n": n},
        reference_solution=G,
    )


def band_limits(alpha):
    """Singular value band ``(alpha sqrt(alpha-1), sqrt(2 alpha)(alpha-1))``."""
    if not alpha > 2:
        raise InvalidAlpha(f"alpha must exceed 2, got {alpha}")
    return alpha * np.sqrt(alpha - 1.0), np.sqrt(2.0 * alpha) * (alpha - 1.0)


def gen_case2(n, alpha, seed):
    """Random ``X - A^T X^{-2} A = I`` problem with ``A = U diag(d) V^T``."""
    n = _check_n(n)
    s1, s2 = band_limits(alpha)
    rng = np.random.default_rng(seed)
    d = (s2 - s1) * rng.random(n) + s1
    U = orthogonal_factor(rng.random((n, n)))
    V = orthogonal_factor(rng.random((n, n)))
    A = U @ np.diag(d) @ V.T
    cert = find_alpha_theorem4(A)
    return GeneratedProblem(
        problem_id=f"case2-n{n}-s{seed}",
        spec=EquationSpec.case2(A, np.eye(n)),
        case_tag=2,
        seed=seed,
        certificate=cert,
        params={"n": n, "alpha": float(alpha)},
    )


def gen_case3(n, s, t1, t2, seed):
    """Random ``X^s + A1^T X^{-t1} A1 + A2^T X^{-t2} A2 = I`` problem."""
    n = _check_n(n)
    if not s > 0:
        raise InvalidInput(f"s must be positive, got {s}")
    rng = np.random.default_rng(seed)
    L, N1, N2 = _orthonormal_stack(n, 3, rng)
    G = mk.symmetrize(L.T @ L)
    A1 = mk.spd_power(G, t1 / (2.0 * s)) @ N1
    A2 = mk.spd_power(G, t2 / (2.0 * s)) @ N2
    I = np.eye(n)
    return GeneratedProblem(
        problem_id=f"case3-n{n}-s{seed}",
        spec=EquationSpec.case3(A1, A2, I, s, t1, t2),
        case_tag=3,
        seed=seed,
        witness=FactorWitness(L, [N1, N2], I),
        params={"n": n, "s": float(s), "t1": float(t1), "t2": float(t2)},
        reference_solution=mk.spd_power(G, 1.0 / s),
    )


def generate(case, n, seed, alpha=3.0, s=2.0, t1=0.5, t2=0.5):
    case = str(case)
    if case == "1":
        return gen_case1(n, seed)
    if case == "2":
        return gen_case2(n, alpha, seed)
    if case == "3":
        return gen_case3(n, s, t1, t2, seed)
    raise InvalidInput(f"no generator for case {case!r}")


# Literature examples, transcribed to four decimals as printed.
_TABLE1_EX1 = [
    [0.0955, 0.0797, 0.0848, 0.0575],
    [0.0920, 0.0114, 0.0583, 0.0010],
    [0.0385, 0.0159, 0.0586, 0.0809],
    [0.0163, 0.0356, 0.0926, 0.0609],
]
_TABLE1_EX2 = [
    [0.8862, 0.8978, 0.8194, 0.4279],
    [0.9311, 0.5934, 0.5319, 0.9661],
    [0.1908, 0.5038, 0.2021, 0.6201],
    [0.2586, 0.6128, 0.4539, 0.6954],
]
_TABLE1_EX4 = [
    [0.0450, 0.0440, 0.0900, 0.0660, 0.0470, 0.0060],
    [0.0810, 0.0680, 0.0550, 0.0700, 0.0460, 0.0140],
    [0.0930, 0.0470, 0.0750, 0.0920, 0.0810, 0.0170],
    [0.0670, 0.0950, 0.0120, 0.0660, 0.0820, 0.0630],
    [0.0370, 0.0350, 0.0450, 0.0690, 0.0190, 0.0030],
    [0.0410, 0.0340, 0.0070, 0.0850, 0.0030, 0.0470],
]
_CASE2_EX3 = [
    [-0.1, -0.1, 0.02, 0.08],
    [-0.09, 0.3, -0.2, -0.1],
    [-0.04, 0.1, 0.01, -0.1],
    [-0.08, -0.06, -0.1, -0.2],
]
_TABLE6_EX1_A = [
    [2, 0, 0, 1, 0, 0],
    [1, 2, 0, 0, 1, 0],
    [0, 0, 3, 0, 1, 0],
    [1, 0, 0, 2, 0, 1],
    [1, 0, 1, 0, 3, 0],
    [0, 1, 0, 0, 1, 2],
]
_TABLE6_EX1_B = [
    [2, 1, 6, 0, 5, 7],
    [3, 4, 7, 1, 3, 0],
    [0, 9, 2, 4, 7, 8],
    [8, 5, 3, 0, 0, 1],
    [2, 5, 0, 2, 1, 7],
    [4, 0, 0, 1, 4, 9],
]
_TABLE6_EX1_Q = [
    [105, 66, 58, 15, 41, 73],
    [66, 154, 67, 50, 88, 121],
    [58, 67, 109, 15, 71, 61],
    [15, 50, 15, 28, 37, 57],
    [41, 88, 71, 37, 113, 136],
    [73, 121, 61, 57, 136, 250],
]
_TABLE6_EX2 = {
    "A": [[0.5853, 0.0], [0.0, 0.5497]],
    "B": [[0.9172, 0.0], [0.0, 0.2858]],
    "Q": [[0.3786, 0.0], [0.0, 0.3769]],
}

# Reported solutions (four decimals as printed); compare with care, see README.
TABLE2_EX1_X = np.array([
    [1.0009, 0.0007, 0.0012, 0.0009],
    [0.0007, 1.0005, 0.0009, 0.0007],
    [0.0012, 0.0009, 1.0016, 0.0013],
    [0.0009, 0.0007, 0.0013, 1.0010],
])
TABLE4_EX3_X = np.array([
    [0.9877, 0.0125, 0.0068, 0.0170],
    [0.0125, 1.0821, -0.0433, -0.0525],
    [0.0068, -0.0433, 1.0540, 0.0560],
    [0.0170, -0.0525, 0.0560, 1.0621],
])


def _fixture(pid, spec, tag, **params):
    return GeneratedProblem(problem_id=pid, spec=spec, case_tag=tag, params=params or None)


def fixtures():
    """Real-valued literature examples for all three cases."""
    a = np.array
    I4, I6 = np.eye(4), np.eye(6)
    out = [
        _fixture("case1-ex1", EquationSpec.case1(a(_TABLE1_EX1), I4), 1),
        _fixture("case1-ex2", EquationSpec.case1(a(_TABLE1_EX2), I4), 1),
        _fixture("case1-ex4", EquationSpec.case1(a(_TABLE1_EX4), I6), 1),
        _fixture("case2-ex1", EquationSpec.case2(a(_TABLE1_EX1), I4), 2),
        _fixture("case2-ex2", EquationSpec.case2(a(_TABLE1_EX2), I4), 2),
        _fixture("case2-ex3", EquationSpec.case2(a(_CASE2_EX3), I4), 2),
        _fixture("case2-ex4", EquationSpec.case2(a(_TABLE1_EX4), I6), 2),
        _fixture(
            "case3-ex1",
            EquationSpec.case3(a(_TABLE6_EX1_A, float), a(_TABLE6_EX1_B, float),
                               a(_TABLE6_EX1_Q, float), 5, 0.2, 0.5),
            3, s=5.0, t1=0.2, t2=0.5,
        ),
        _fixture(
            "case3-ex2",
            EquationSpec.case3(a(_TABLE6_EX2["A"]), a(_TABLE6_EX2["B"]),
                               a(_TABLE6_EX2["Q"]), 2, 0.5, 0.5),
            3, s=2.0, t1=0.5, t2=0.5,
        ),
    ]
    return out


def fixture(problem_id):
    for p in fixtures():
        if p.problem_id == problem_id:
            return p
    raise InvalidInput(f"unknown fixture {problem_id!r}")


# -- serialization ---------------------------------------------------------

def write_problem(problem, out_dir):
    """Write matrix files plus ``manifest.json`` into ``out_dir``.

    Returns the manifest path.
    """
    os.makedirs(out_dir, exist_ok=True)
    spec = problem.spec
    files = {}

    def put(name, M):
        fname = f"{name}.mat"
        write_matrix(os.path.join(out_dir, fname), M)
        files[name] = fname

    if spec.case in ("1", "2"):
        put("A", spec.A[0])
    else:
        for i, Ai in enumerate(spec.A, start=1):
            put(f"A{i}", Ai)
    put("Q", spec.Q)
    if problem.witness is not None:
        put("L", problem.witness.L)
        if len(problem.witness.N_list) == 1:
            put("N", problem.witness.N_list[0])
        else:
            for i, N in enumerate(problem.witness.N_list, start=1):
                put(f"N{i}", N)
    if problem.reference_solution is not None:
        put("X_ref", problem.reference_solution)

    manifest = {
        "problem_id": problem.problem_id,
        "case": spec.case,
        "n": spec.n,
        "seed": problem.seed,
        "s": spec.s,
        "t": list(spec.t),
        "params": problem.params or {},
        "files": files,
        "certificate": None if problem.certificate is None else problem.certificate.to_dict(),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    return path


def read_problem(manifest_path):
    """Inverse of :func:`write_problem`."""
    try:
        with open(manifest_path) as fh:
            man = json.load(fh)
        return _problem_from_manifest(man, manifest_path)
    except OSError as exc:
        raise InvalidInput(f"cannot read {manifest_path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{manifest_path}: invalid JSON: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"{manifest_path}: malformed manifest ({exc!r})") from None


def _problem_from_manifest(man, manifest_path):
    base = os.path.dirname(os.path.abspath(manifest_path))
    files = man["files"]

    def get(name):
        return read_matrix(os.path.join(base, files[name]))

    case = str(man["case"])
    Q = get("Q")
    if case in ("1", "2"):
        spec = EquationSpec(case, (get("A"),), Q)
    else:
        As = [get(f"A{i}") for i in range(1, len(man["t"]) + 1)]
        spec = EquationSpec(case, tuple(As), Q, man["s"], tuple(man["t"]))
    witness = None
    if "L" in files:
        Ns = [get("N")] if "N" in files else [get(k) for k in ("N1", "N2") if k in files]
        witness = FactorWitness(get("L"), Ns, Q)
    cert = None
    if man.get("certificate"):
        c = man["certificate"]
        cert = ExistenceCertificate(c["alpha"], c["sigma_min"], c["sigma_max"], c["margins"])
    return GeneratedProblem(
        problem_id=man["problem_id"],
        spec=spec,
        case_tag=int(case) if case.isdigit() else 0,
        seed=man.get("seed"),
        witness=witness,
        certificate=cert,
        params=man.get("params") or None,
        reference_solution=get("X_ref") if "X_ref" in files else None,
    )
