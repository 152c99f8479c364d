"""Benchmark both solvers on a generated suite and print performance profiles.

Writes ``records.csv`` and ``profile_time.csv`` to a temporary directory
and prints each solver's profile as a small table.
"""
import tempfile
from pathlib import Path

from nmesolve import bench, probgen


def main():
    problems = [probgen.generate("3", 10, seed) for seed in range(15)]
    problems += [probgen.generate("1", 10, seed) for seed in range(15)]
    records = bench.run_suite(problems, ["nonlinear", "fixed-point"], workers=4)

    out = Path(tempfile.mkdtemp())
    bench.emit(records, out / "records.csv")
    for metric in ("time", "error"):
        curves = bench.dolan_more(records, metric)
        bench.emit(curves, out / f"profile_{metric}.csv")
        print(f"-- {metric} profile")
        for c in curves:
            taus = [1.0, 2.0, 4.0, 16.0]
            row = "  ".join(f"rho({t:g})={c.rho(t):.2f}" for t in taus)
            print(f"   {c.solver_id:12s} {row}")
    print("files written to", out)


if __name__ == "__main__":
    main()
