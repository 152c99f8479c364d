"""Command line front end.

Exit codes: 0 success, 1 condition does not hold (``check``), 2 iteration
cap reached (``solve``), 3 invalid input, 4 numerical breakdown.
"""
import argparse
import json
import os
import sys

import numpy as np

from . import bench, existence, probgen
from . import matkernel as mk
from .baselines import fixed_point
from .errors import InvalidInput, NumericalError
from .matio import read_matrix, write_matrix
from .solvers import EquationSpec, SolverConfig, solve

EXIT_OK, EXIT_FALSE, EXIT_MAXITER, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _print_json(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config(args):
    return SolverConfig(delta=args.delta, eps=args.eps, max_iter=args.max_iter)


def _add_config_flags(p):
    p.add_argument("--delta", type=float, default=1e-10)
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=500)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise InvalidInput(f"case {args.case} requires {flags}")


def _spec_from_args(args):
    _need(args, "Q")
    Q = read_matrix(args.Q)
    if args.case in ("1", "2"):
        _need(args, "A")
        return EquationSpec(args.case, (read_matrix(args.A),), Q)
    if args.case == "3":
        _need(args, "A", "A2", "s", "t1", "t2")
        return EquationSpec.case3(read_matrix(args.A), read_matrix(args.A2), Q,
                                  args.s, args.t1, args.t2)
    _need(args, "s")
    As = list(args.Ai or [])
    if args.A:
        As.insert(0, args.A)
    if not As:
        raise InvalidInput("case general requires at least one --Ai")
    return EquationSpec.general([read_matrix(a) for a in As], args.t or [], args.s, Q)


def cmd_solve(args):
    spec = _spec_from_args(args)
    cfg = _config(args)
    runner = solve if args.solver == "nonlinear" else fixed_point
    report = runner(spec, cfg)
    out = report.to_dict(include_x=args.print_x)
    out["solver"] = report.solver if args.solver == "nonlinear" else f"{report.solver} (stand-in)"
    out["x_path"] = None
    if args.x_out:
        write_matrix(args.x_out, report.X)
        out["x_path"] = args.x_out
    _print_json(out, args.out)
    return EXIT_OK if report.converged else EXIT_MAXITER


def cmd_generate(args):
    if args.n is None or args.seed is None:
        raise InvalidInput("generate requires --n and --seed")
    problem = probgen.generate(args.case, args.n, args.seed, alpha=args.alpha,
                               s=args.s, t1=args.t1, t2=args.t2)
    path = probgen.write_problem(problem, args.out_dir)
    _print_json({"manifest": path, "problem_id": problem.problem_id})
    return EXIT_OK


def _check_problem(problem, alpha=None):
    spec = problem.spec
    if spec.case == "2":
        return _check_case2(spec.A[0], alpha)
    w = problem.witness
    if w is None:
        raise InvalidInput(f"case {spec.case} check needs a factor witness (L, N)")
    return check_witness(w)


def check_witness(w):
    if len(w.N_list) == 1:
        ratio = existence.offdiag_ratio(existence.theorem2_matrix(w))
        ok = existence.check_theorem2(w)
        return ok, {"condition": "diagonal", "offdiag_ratio": ratio, "holds": ok}
    ratio = existence.offdiag_ratio(existence.theorem1_gram(w))
    ok = existence.check_theorem1(w)
    return ok, {"condition": "orthogonal_columns", "offdiag_ratio": ratio, "holds": ok}


def _check_case2(A, alpha):
    if alpha is not None:
        ok, cert = existence.check_theorem3(A, alpha)
        return ok, {"condition": "fixed_alpha", "holds": ok, "certificate": cert.to_dict()}
    cert = existence.find_alpha_theorem4(A)
    sv = mk.singular_values(A)
    out = {"condition": "singular_value_band", "holds": cert is not None,
           "sigma_min": float(sv[0]), "sigma_max": float(sv[-1]),
           "certificate": None if cert is None else cert.to_dict()}
    return cert is not None, out


def cmd_check(args):
    if args.manifest:
        ok, out = _check_problem(probgen.read_problem(args.manifest), args.alpha)
    elif args.case == "2":
        _need(args, "A")
        ok, out = _check_case2(read_matrix(args.A), args.alpha)
    elif args.case in ("1", "3"):
        _need(args, "L")
        L = read_matrix(args.L)
        Q = read_matrix(args.Q) if args.Q else np.eye(L.shape[0])
        if args.case == "1":
            _need(args, "N")
            w = existence.FactorWitness(L, [read_matrix(args.N)], Q)
        else:
            _need(args, "N1", "N2")
            w = existence.FactorWitness(L, [read_matrix(args.N1), read_matrix(args.N2)], Q)
        ok, out = check_witness(w)
    else:
        raise InvalidInput("check needs --manifest or --case {1,2,3}")
    _print_json(out, args.out)
    return EXIT_OK if ok else EXIT_FALSE


def _suite_problems(spec_path):
    try:
        with open(spec_path) as fh:
            suite = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read suite {spec_path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"suite {spec_path} is not valid JSON: {exc}") from None
    base = os.path.dirname(os.path.abspath(spec_path))
    problems = []
    for entry in suite.get("problems", []):
        if "manifest" in entry:
            problems.append(probgen.read_problem(os.path.join(base, entry["manifest"])))
        elif "fixture" in entry:
            problems.append(probgen.fixture(entry["fixture"]))
        else:
            kw = {k: entry[k] for k in ("alpha", "s", "t1", "t2") if k in entry}
            problems.append(probgen.generate(entry["case"], entry["n"], entry["seed"], **kw))
    return problems, suite.get("solvers")


def cmd_bench(args):
    solvers = None
    if args.suite:
        problems, solvers = _suite_problems(args.suite)
    else:
        if args.n is None:
            raise InvalidInput("bench requires --suite or --case/--n/--count")
        seed0 = args.seed or 0
        problems = [probgen.generate(args.case, args.n, seed0 + i, alpha=args.alpha,
                                     s=args.s, t1=args.t1, t2=args.t2)
                    for i in range(args.count)]
    if args.solvers:
        solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    if not solvers:
        raise InvalidInput("bench requires --solvers or a suite 'solvers' list")
    records = bench.run_suite(problems, solvers, _config(args), workers=args.workers)
    bench.emit(records, args.out, args.format)
    _print_json({"records": len(records), "out": args.out})
    return EXIT_OK


def cmd_profile(args):
    records = bench.load_records(args.records)
    curves = bench.dolan_more(records, args.metric)
    bench.emit(curves, args.out, args.format)
    _print_json({"curves": len(curves), "out": args.out})
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="nmesolve", description="SPD solutions of nonlinear matrix equations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one equation from matrix files")
    p.add_argument("--case", required=True, choices=["1", "2", "3", "general"])
    p.add_argument("--A")
    p.add_argument("--A2")
    p.add_argument("--Ai", action="append", help="coefficient file (case general, repeatable)")
    p.add_argument("--Q")
    p.add_argument("--s", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--t2", type=float)
    p.add_argument("--t", type=float, action="append", help="exponent (case general, repeatable)")
    p.add_argument("--solver", choices=["nonlinear", "fixed-point"], default="nonlinear")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--x-out", help="write the solution matrix file here")
    p.add_argument("--print-x", action="store_true", help="include X in the JSON report")
    _add_config_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="generate a seeded random problem")
    p.add_argument("--case", required=True, choices=["1", "2", "3"])
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--alpha", type=float, default=3.0)
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--t1", type=float, default=0.5)
    p.add_argument("--t2", type=float, default=0.5)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="test solvability conditions")
    p.add_argument("--manifest")
    p.add_argument("--case", choices=["1", "2", "3"])
    p.add_argument("--A")
    p.add_argument("--L")
    p.add_argument("--N")
    p.add_argument("--N1")
    p.add_argument("--N2")
    p.add_argument("--Q")
    p.add_argument("--alpha", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="run solvers over a problem suite")
    p.add_argument("--suite", help="JSON suite file")
    p.add_argument("--case", choices=["1", "2", "3"], default="1")
    p.add_argument("--n", type=int)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int)
    p.add_argument("--alpha", type=float, default=3.0)
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--t1", type=float, default=0.5)
    p.add_argument("--t2", type=float, default=0.5)
    p.add_argument("--solvers", help="comma separated solver ids")
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("profile", help="Dolan-More profiles from a records file")
    p.add_argument("--records", required=True)
    p.add_argument("--metric", choices=["time", "error"], default="time")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical breakdown: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
