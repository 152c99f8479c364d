"""Solver x problem benchmarking and Dolan-More performance profiles.

For a metric ``m`` (wall time or final residual) the ratio of solver ``s``
on problem ``p`` is ``r = m[p, s] / min_s' m[p, s']``, infinite when ``s``
did not solve ``p``.  The profile ``rho_s(tau)`` is the fraction of
problems with ``r <= tau``.
"""
import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import baselines, solvers
from .errors import EmptyInput, InvalidInput, NumericalError, UnknownSolverId
from .solvers import SolverConfig

METRIC_FLOOR = 1e-16
RECORD_FIELDS = ["solver", "problem", "case", "n", "time_s", "E", "iterations", "converged"]
PROFILE_FIELDS = ["solver", "metric", "tau", "rho"]

_POWER = ("3", "general")
SOLVERS = {
    "nonlinear": (solvers.solve, ("1", "2") + _POWER),
    "nonlinear1": (solvers.solve, ("1",)),
    "nonlinear2": (solvers.solve, ("2",)),
    "nonlinear3": (solvers.solve, _POWER),
    "fixed-point": (baselines.fixed_point, ("1", "2") + _POWER),
    "fp1": (baselines.fixed_point, ("1",)),
    "fp2": (baselines.fixed_point, ("2",)),
    "fp3": (baselines.fixed_point, _POWER),
}


@dataclass
class PerfRecord:
    solver_id: str
    problem_id: str
    case: str
    n: int
    time_s: float
    E: Optional[float]
    iterations: int
    converged: bool

    def row(self):
        return {
            "solver": self.solver_id,
            "problem": self.problem_id,
            "case": self.case,
            "n": self.n,
            "time_s": self.time_s,
            "E": self.E,
            "iterations": self.iterations,
            "converged": self.converged,
        }


@dataclass
class ProfileCurve:
    solver_id: str
    metric: str
    points: List[Tuple[float, float]] = field(default_factory=list)

    def rho(self, tau):
        """Step-function value at ``tau``."""
        val = 0.0
        for t, r in self.points:
            if t <= tau:
                val = r
            else:
                break
        return val


def _run_one(problem, solver_id, cfg):
    func, _ = SOLVERS[solver_id]
    spec = problem.spec
    start = time.perf_counter()
    try:
        rep = func(spec, cfg)
    except NumericalError:
        return PerfRecord(solver_id, problem.problem_id, spec.case, spec.n,
                          time.perf_counter() - start, None, 0, False)
    return PerfRecord(solver_id, problem.problem_id, spec.case, spec.n,
                      rep.wall_time, rep.E, rep.iterations, rep.converged)


def run_suite(problems, solver_ids, cfg=None, workers=None):
    """Run every solver on every problem.

    Hard numerical breakdowns become records with ``converged=False`` and
    ``E=None``.  Records come back sorted by ``(problem_id, solver_id)``
    whatever the scheduling.

    Parameters
    ----------
    problems : list of GeneratedProblem
    solver_ids : list of str
        Keys of :data:`SOLVERS`.
    cfg : SolverConfig, optional
    workers : int, optional
        Thread pool size; ``None`` or 1 runs sequentially.
    """
    problems = list(problems)
    solver_ids = list(solver_ids)
    if not solver_ids:
        raise UnknownSolverId("no solvers given")
    if not problems:
        raise EmptyInput("no problems given")
    for sid in solver_ids:
        if sid not in SOLVERS:
            raise UnknownSolverId(f"unknown solver {sid!r}; choose from {sorted(SOLVERS)}")
        cases = SOLVERS[sid][1]
        for p in problems:
            if p.spec.case not in cases:
                raise InvalidInput(f"solver {sid} cannot handle case {p.spec.case} ({p.problem_id})")
    cfg = cfg or SolverConfig()
    jobs = [(p, sid) for p in problems for sid in solver_ids]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda job: _run_one(job[0], job[1], cfg), jobs))
    else:
        records = [_run_one(p, sid, cfg) for p, sid in jobs]
    records.sort(key=lambda r: (r.problem_id, r.solver_id))
    return records


def _metric_value(rec, metric):
    """Metric for a solved record, or None when the record counts as unsolved."""
    if metric == "time":
        if not rec.converged:
            return None
        return max(rec.time_s, METRIC_FLOOR)
    if rec.E is None or not math.isfinite(rec.E):
        return None
    return max(rec.E, METRIC_FLOOR)


def performance_ratios(records, metric):
    """``{solver: {problem: ratio}}`` with ``inf`` for unsolved pairs."""
    if metric not in ("time", "error"):
        raise InvalidInput(f"metric must be 'time' or 'error', got {metric!r}")
    records = list(records)
    if not records:
        raise EmptyInput("no records")
    problems = sorted({r.problem_id for r in records})
    solver_ids = sorted({r.solver_id for r in records})
    values = {}
    for r in records:
        values[(r.problem_id, r.solver_id)] = _metric_value(r, metric)
    ratios = {s: {} for s in solver_ids}
    for p in problems:
        solved = [v for s in solver_ids if (v := values.get((p, s))) is not None]
        best = min(solved) if solved else None
        for s in solver_ids:
            v = values.get((p, s))
            ratios[s][p] = math.inf if v is None else v / best
    return ratios


def dolan_more(records, metric):
    """Performance profile curves for ``metric`` in ``{"time", "error"}``.

    Every curve is sampled on the same grid: ``tau = 1`` plus every finite
    ratio observed for any solver.  The last point of each curve is that
    solver's solved fraction.

    Raises
    ------
    EmptyInput
    """
    ratios = performance_ratios(records, metric)
    finite = {r for per in ratios.values() for r in per.values() if math.isfinite(r)}
    grid = sorted(finite | {1.0})
    curves = []
    for s in sorted(ratios):
        rs = sorted(ratios[s].values())
        n_prob = len(rs)
        points, j = [], 0
        for tau in grid:
            while j < n_prob and rs[j] <= tau:
                j += 1
            points.append((tau, j / n_prob))
        curves.append(ProfileCurve(s, metric, points))
    return curves


# -- emission ------------------------------------------------------------------

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _curve_rows(curves):
    rows = [
        {"solver": c.solver_id, "metric": c.metric, "tau": t, "rho": r}
        for c in curves
        for t, r in c.points
    ]
    rows.sort(key=lambda d: (d["solver"], d["tau"]))
    return rows


def emit(items, path, fmt="csv"):
    """Write records or profile curves to ``path`` as CSV or JSON.

    An empty list is written with the record schema.
    """
    items = list(items)
    if fmt not in ("csv", "json"):
        raise InvalidInput(f"format must be csv or json, got {fmt!r}")
    if items and isinstance(items[0], ProfileCurve):
        fields, rows = PROFILE_FIELDS, _curve_rows(items)
    else:
        fields, rows = RECORD_FIELDS, [r.row() for r in items]
    with open(path, "w", newline="") as fh:
        if fmt == "json":
            json.dump(rows, fh, indent=1)
            fh.write("\n")
        else:
            w = csv.writer(fh)
            w.writerow(fields)
            for row in rows:
                w.writerow([_fmt(row[f]) for f in fields])


def _parse_bool(text):
    t = str(text).strip().lower()
    if t in ("true", "1"):
        return True
    if t in ("false", "0"):
        return False
    raise InvalidInput(f"bad boolean {text!r}")


def _record_from_row(row):
    try:
        E = row["E"]
        return PerfRecord(
            solver_id=str(row["solver"]),
            problem_id=str(row["problem"]),
            case=str(row["case"]),
            n=int(row["n"]),
            time_s=float(row["time_s"]),
            E=None if E in ("", None) else float(E),
            iterations=int(row["iterations"]),
            converged=row["converged"] if isinstance(row["converged"], bool)
            else _parse_bool(row["converged"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidInput(f"malformed record row {row!r}: {exc}") from None


def _read_rows(path, fmt, fields):
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "csv"
    try:
        with open(path, newline="") as fh:
            if fmt == "json":
                rows = json.load(fh)
            else:
                reader = csv.DictReader(fh)
                if reader.fieldnames != fields:
                    raise InvalidInput(f"{path}: expected columns {fields}, got {reader.fieldnames}")
                rows = list(reader)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON: {exc}") from None
    return rows


def load_records(path, fmt=None):
    return [_record_from_row(r) for r in _read_rows(path, fmt, RECORD_FIELDS)]


def load_curves(path, fmt=None):
    rows = _read_rows(path, fmt, PROFILE_FIELDS)
    curves = {}
    for row in rows:
        key = (row["solver"], row["metric"])
        c = curves.setdefault(key, ProfileCurve(row["solver"], row["metric"]))
        c.points.append((float(row["tau"]), float(row["rho"])))
    return [curves[k] for k in sorted(curves)]
