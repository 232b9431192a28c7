"""Convergence studies: sup-norm error measurement, rate fits and reports."""

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .. import approx, quad, solver
from ..errors import DomainError, InsufficientDataError, UnknownNameError
from ..sinc import de_mesh_indef, de_mesh_symmetric, se_mesh
from ..specfun import arsinh
from ..transform import TransformKind, forward
from .problems import get_function, get_problem

__all__ = [
    "METHODS",
    "ROUNDOFF_FLOOR",
    "CSV_COLUMNS",
    "StudyConfig",
    "StudyRecord",
    "RateFit",
    "ConvergenceReport",
    "sample_grid",
    "sup_error",
    "run_study",
    "fit_rate",
    "de_exponent",
    "solve_method",
]

METHODS = (
    "se-nystrom",
    "de-nystrom",
    "se-collocation",
    "de-collocation",
    "se-approx",
    "de-approx",
    "se-indef",
    "de-indef",
)
SOLVER_METHODS = METHODS[:4]
ROUNDOFF_FLOOR = 1e-13
GRID_PAD = 5.0
CSV_COLUMNS = (
    "method",
    "problem",
    "n",
    "l",
    "h",
    "M",
    "N",
    "sup_error",
    "bound",
    "inv_norm",
    "elapsed_ms",
)


def method_kind(method):
    if method not in METHODS:
        raise UnknownNameError(f"unknown method {method!r}; available: {', '.join(METHODS)}")
    return TransformKind.SE if method.startswith("se-") else TransformKind.DE


@dataclass
class StudyConfig:
    """What to run.  ``overrides`` may set any of ``alpha``, ``beta``, ``d``."""

    method: str
    problem: str
    n_list: list
    overrides: dict = field(default_factory=dict)
    grid_points: int = 2001
    output: Optional[str] = None
    json_output: Optional[str] = None
    timing: bool = True
    workers: int = 1

    def __post_init__(self):
        method_kind(self.method)
        self.n_list = [int(n) for n in self.n_list]
        if not self.n_list:
            raise DomainError("n_list must not be empty")
        if any(n < 1 for n in self.n_list) or any(
            b <= a for a, b in zip(self.n_list, self.n_list[1:])
        ):
            raise DomainError("n_list must be strictly ascending positive integers")
        if self.grid_points < 3:
            raise DomainError("grid_points must be at least 3")
        unknown = set(self.overrides) - {"alpha", "beta", "d"}
        if unknown:
            raise DomainError(f"unknown overrides: {sorted(unknown)}")
        self.overrides = {k: float(v) for k, v in self.overrides.items() if v is not None}

    @classmethod
    def from_mapping(cls, data):
        data = dict(data)
        if "json" in data and "json_output" not in data:
            data["json_output"] = data.pop("json")
        return cls(**data)


@dataclass
class StudyRecord:
    n: int
    l: int
    h: float
    M: int
    N: int
    sup_error: float
    bound: Optional[float] = None
    inv_norm: Optional[float] = None
    elapsed_ms: Optional[float] = None
    status: str = "ok"
    message: str = ""


@dataclass
class RateFit:
    slope: float
    intercept: float
    r2: float
    abscissa: str
    used_n: list


@dataclass
class ConvergenceReport:
    method: str
    problem: str
    kind: str
    alpha: float
    beta: float
    d: float
    grid_points: int
    records: list
    fitted_rate: Optional[RateFit] = None
    fit_message: str = ""

    @property
    def mu(self):
        return min(self.alpha, self.beta)

    def errors(self):
        return np.array([r.sup_error for r in self.records])

    def record(self, n):
        for rec in self.records:
            if rec.n == n:
                return rec
        raise KeyError(n)

    def to_rows(self):
        rows = []
        for rec in self.records:
            values = {
                "method": self.method,
                "problem": self.problem,
                "n": rec.n,
                "l": rec.l,
                "h": rec.h,
                "M": rec.M,
                "N": rec.N,
                "sup_error": rec.sup_error,
                "bound": rec.bound,
                "inv_norm": rec.inv_norm,
                "elapsed_ms": rec.elapsed_ms,
            }
            rows.append([_format_cell(values[c]) for c in CSV_COLUMNS])
        return rows

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            writer.writerows(self.to_rows())

    def to_dict(self):
        out = asdict(self)
        out["mu"] = self.mu
        out["records"] = [_json_safe(asdict(r)) for r in self.records]
        return out

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _json_safe(mapping):
    return {
        k: (None if isinstance(v, float) and not math.isfinite(v) else v)
        for k, v in mapping.items()
    }


def sample_grid(mesh, grid_points=2001):
    """Measurement points: ``T(x)`` for ``x`` equispaced on ``[-Mh-5, Nh+5]``, plus 0 and inf."""
    x = np.linspace(-mesh.M * mesh.h - GRID_PAD, mesh.N * mesh.h + GRID_PAD, grid_points)
    return np.concatenate([forward(mesh.kind, x), [0.0, np.inf]])


def sup_error(evaluator, exact, mesh, grid_points=2001):
    """Max over components and :func:`sample_grid` points of ``|evaluator - exact|``."""
    t = sample_grid(mesh, grid_points)
    got = np.asarray(evaluator(t), dtype=float).reshape(t.size, -1)
    want = np.asarray(exact(t), dtype=float).reshape(t.size, -1)
    return float(np.max(np.abs(got - want)))


def de_exponent(n, mu, d):
    """``pi d n / arsinh(d n / mu)``, the exponent of the DE rates."""
    return math.pi * d * n / arsinh(d * n / mu)


_ABSCISSAE = {
    "sqrt_n": lambda n, mu, d: math.sqrt(n),
    "de_exponent": de_exponent,
}


def fit_rate(report, abscissa=None):
    """Least-squares line through ``(abscissa(n), log sup_error)``.

    Records that failed or sit at or below :data:`ROUNDOFF_FLOOR` are left
    out.  ``abscissa`` defaults to ``sqrt_n`` for SE methods and
    ``de_exponent`` for DE methods.

    Raises:
        InsufficientDataError: with fewer than three usable records.
    """
    if abscissa is None:
        abscissa = "sqrt_n" if report.kind == "SE" else "de_exponent"
    if abscissa not in _ABSCISSAE:
        raise DomainError(f"unknown abscissa {abscissa!r}")
    xfun = _ABSCISSAE[abscissa]
    used = [
        r
        for r in report.records
        if r.status == "ok" and math.isfinite(r.sup_error) and r.sup_error > ROUNDOFF_FLOOR
    ]
    if len(used) < 3:
        raise InsufficientDataError(
            f"need 3 records above {ROUNDOFF_FLOOR:g} to fit a rate, have {len(used)}"
        )
    x = np.array([xfun(r.n, report.mu, report.d) for r in used])
    y = np.log([r.sup_error for r in used])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return RateFit(float(slope), float(intercept), r2, abscissa, [r.n for r in used])


def _resolve_params(method, problem_name, overrides):
    kind = method_kind(method)
    if method in SOLVER_METHODS:
        target = get_problem(problem_name)
        if overrides:
            target = target.with_params(kind, **overrides)
        params = target.params(kind)
    else:
        target = get_function(problem_name)
        params = target.se_params if kind is TransformKind.SE else target.de_params
        params = tuple(overrides.get(k, v) for k, v in zip(("alpha", "beta", "d"), params))
    return kind, target, params


def solve_method(method, problem_name, n, overrides=None):
    """Build and return ``(mesh, evaluator, exact, extras)`` for one run.

    ``extras`` holds ``inv_norm`` (solver methods) and ``bound`` (explicit
    DE approximation bounds) when available.
    """
    kind, target, (alpha, beta, d) = _resolve_params(method, problem_name, overrides or {})
    mu = min(alpha, beta)
    extras = {}
    if method in SOLVER_METHODS:
        sol = solver.solve_nystrom(target, n, kind)
        extras["inv_norm"] = sol.inv_norm_estimate
        extras["solution"] = sol
        if method.endswith("collocation"):
            sol = solver.build_collocation(sol)
            extras["solution"] = sol
            evaluator = lambda t: solver.eval_collocation(sol, t)
        else:
            evaluator = lambda t: solver.eval_nystrom(sol, t)
        return sol.mesh, evaluator, target.exact, extras

    case = target
    if method.endswith("indef"):
        if kind is TransformKind.SE:
            mesh = se_mesh(alpha, beta, d, n)
            q = quad.build_se_indefinite(case.f, mesh)
        else:
            mesh = de_mesh_indef(alpha, beta, d, n)
            q = quad.build_de_indefinite(case.f, mesh)
        return mesh, q, case.integral, extras

    if kind is TransformKind.SE:
        mesh = se_mesh(alpha, beta, d, n)
        builder, boundary_builder = approx.build_se, approx.build_se_boundary
    else:
        mesh = de_mesh_symmetric(mu, d, n)
        builder, boundary_builder = approx.build_de, approx.build_de_boundary
    if case.boundary is not None:
        p, q = case.boundary
        a = boundary_builder(case.f, p, q, mesh)
    else:
        a = builder(case.f, mesh)
    if kind is TransformKind.DE and mu <= 1:
        if case.boundary is None and case.decay_constant is not None:
            extras["bound"] = approx.de_bound(n, case.decay_constant, mu, d)
        elif case.boundary is not None and case.holder is not None and mu == 1:
            C = approx.holder_to_Cdd_de(case.holder(d), mu, d)
            extras["bound"] = approx.de_bound(n, C, mu, d)
    return mesh, a, case.value, extras


def _run_one(config, n):
    start = time.perf_counter()
    try:
        mesh, evaluator, exact, extras = solve_method(
            config.method, config.problem, n, config.overrides
        )
        err = sup_error(evaluator, exact, mesh, config.grid_points)
    except np.linalg.LinAlgError as exc:
        elapsed = (time.perf_counter() - start) * 1e3
        return StudyRecord(
            n=n, l=0, h=math.nan, M=0, N=0, sup_error=math.nan,
            elapsed_ms=elapsed if config.timing else None,
            status="failed", message=str(exc),
        )
    elapsed = (time.perf_counter() - start) * 1e3
    return StudyRecord(
        n=n,
        l=mesh.l,
        h=mesh.h,
        M=mesh.M,
        N=mesh.N,
        sup_error=err,
        bound=extras.get("bound"),
        inv_norm=extras.get("inv_norm"),
        elapsed_ms=elapsed if config.timing else None,
    )


def run_study(config):
    """Run every ``n`` in the config, fit the rate and write the requested files.

    A singular system is recorded as a failed row; the study carries on.
    """
    kind, _, (alpha, beta, d) = _resolve_params(config.method, config.problem, config.overrides)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(lambda n: _run_one(config, n), config.n_list))
    else:
        records = [_run_one(config, n) for n in config.n_list]
    report = ConvergenceReport(
        method=config.method,
        problem=config.problem,
        kind=kind.value,
        alpha=alpha,
        beta=beta,
        d=d,
        grid_points=config.grid_points,
        records=records,
    )
    try:
        report.fitted_rate = fit_rate(report)
    except InsufficientDataError as exc:
        report.fit_message = str(exc)
    if config.output:
        report.write_csv(Path(config.output))
    if config.json_output:
        report.write_json(Path(config.json_output))
    return report
