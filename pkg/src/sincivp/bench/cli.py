"""Command line: ``solve``, ``study``, ``verify`` and ``problems``."""

import argparse
import json
import sys

import numpy as np

from ..errors import DomainError, InsufficientDataError, UnknownNameError
from .lemmas import verify_lemmas
from .problems import builtin_functions, builtin_problems
from .study import METHODS, StudyConfig, run_study, solve_method

__all__ = ["main", "build_parser"]


def _int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sincivp",
        description="Sinc-Nystrom and Sinc-collocation solvers on (0, inf).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one problem and print values")
    solve.add_argument("--method", required=True, choices=METHODS)
    solve.add_argument("--problem", required=True)
    solve.add_argument("--n", type=int, required=True)
    solve.add_argument("--d", type=float)
    solve.add_argument("--alpha", type=float)
    solve.add_argument("--beta", type=float)
    solve.add_argument("--eval", type=_float_list, help="comma-separated t values (inf allowed)")

    study = sub.add_parser("study", help="run a convergence study")
    study.add_argument("--config", help="JSON file with StudyConfig fields")
    study.add_argument("--method", choices=METHODS)
    study.add_argument("--problem")
    study.add_argument("--n-list", type=_int_list)
    study.add_argument("--grid", type=int, dest="grid_points")
    study.add_argument("--d", type=float)
    study.add_argument("--alpha", type=float)
    study.add_argument("--beta", type=float)
    study.add_argument("--out", dest="output")
    study.add_argument("--json", dest="json_output")
    study.add_argument("--workers", type=int)
    study.add_argument(
        "--no-timing",
        dest="timing",
        action="store_false",
        default=None,
        help="leave elapsed_ms empty so repeated runs give identical files",
    )

    verify = sub.add_parser("verify", help="run the randomised inequality checks")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--samples", type=int, default=10_000)

    sub.add_parser("problems", help="list built-in problems and functions")
    return parser


def _overrides(args):
    return {k: getattr(args, k) for k in ("alpha", "beta", "d") if getattr(args, k) is not None}


def _cmd_solve(args, out):
    mesh, evaluator, exact, extras = solve_method(args.method, args.problem, args.n, _overrides(args))
    print(
        f"{args.method} {args.problem} n={args.n}: l={mesh.l} h={mesh.h:.17g} "
        f"M={mesh.M} N={mesh.N}",
        file=out,
    )
    if "inv_norm" in extras:
        print(f"inf-norm of inverse: {extras['inv_norm']:.6e}", file=out)
    if args.eval:
        t = np.array(args.eval, dtype=float)
        got = np.asarray(evaluator(t), dtype=float).reshape(t.size, -1)
        ref = np.asarray(exact(t), dtype=float).reshape(t.size, -1)
        for ti, gi, ri in zip(t, got, ref):
            vals = " ".join(f"{v:.17g}" for v in gi)
            errs = " ".join(f"{e:.3e}" for e in np.abs(gi - ri))
            print(f"t={ti:.17g}  y={vals}  |err|={errs}", file=out)
    elif "solution" in extras:
        sol = extras["solution"]
        for tk, yk in zip(sol.nodes, sol.node_values):
            print(f"t={tk:.17g}  y=" + " ".join(f"{v:.17g}" for v in yk), file=out)
    return 0


def _cmd_study(args, out):
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    for key in ("method", "problem", "n_list", "grid_points", "output", "json_output", "workers", "timing"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    overrides = dict(data.get("overrides") or {})
    overrides.update(_overrides(args))
    data["overrides"] = overrides
    missing = [k for k in ("method", "problem", "n_list") if k not in data]
    if missing:
        raise DomainError(f"study needs {', '.join(missing)} (flag or config file)")
    config = StudyConfig.from_mapping(data)
    report = run_study(config)
    for rec in report.records:
        line = f"n={rec.n:4d} l={rec.l:4d} sup_error={rec.sup_error:.3e}"
        if rec.bound is not None:
            line += f" bound={rec.bound:.3e}"
        if rec.status != "ok":
            line += f" FAILED: {rec.message}"
        print(line, file=out)
    fit = report.fitted_rate
    if fit is None:
        print(f"rate: undefined ({report.fit_message})", file=out)
    else:
        print(f"rate ({fit.abscissa}): slope={fit.slope:.4f} r2={fit.r2:.4f}", file=out)
    return 0


def _cmd_verify(args, out):
    if args.samples < 0:
        raise DomainError("--samples must be nonnegative")
    report = verify_lemmas(seed=args.seed, samples=args.samples)
    print(report.format(), file=out)
    return 0 if report.passed else 1


def _cmd_problems(args, out):
    print("initial value problems (nystrom / collocation methods):", file=out)
    for name, p in builtin_problems().items():
        print(f"  {name:9s} m={p.m}  SE(alpha,beta,d)={_fmt(p.se_params)}  "
              f"DE(alpha,beta,d)={_fmt(p.de_params)}  {p.description}", file=out)
    print("functions (approx / indef methods):", file=out)
    for name, f in builtin_functions().items():
        print(f"  {name:9s} SE={_fmt(f.se_params)}  DE={_fmt(f.de_params)}  {f.description}", file=out)
    return 0


def _fmt(params):
    return "(" + ", ".join(f"{v:.4g}" for v in params) + ")"


_COMMANDS = {
    "solve": _cmd_solve,
    "study": _cmd_study,
    "verify": _cmd_verify,
    "problems": _cmd_problems,
}


def main(argv=None, out=None):
    """Entry point; returns the process exit status."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except (DomainError, UnknownNameError, InsufficientDataError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
