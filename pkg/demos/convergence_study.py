"""Fitted convergence rates of the four solvers on ``decay1``.

SE errors are fitted against sqrt(n); DE errors against
pi d n / arsinh(d n / mu).  Also writes a CSV next to this script.

Run: python demos/convergence_study.py
"""

from pathlib import Path

from sincivp.bench.study import StudyConfig, run_study

here = Path(__file__).parent
for method in ("se-nystrom", "se-collocation", "de-nystrom", "de-collocation"):
    cfg = StudyConfig(method, "decay1", [9, 16, 25, 36, 49, 64], timing=False,
                      output=str(here / f"study_{method}.csv"))
    rep = run_study(cfg)
    fit = rep.fitted_rate
    print(f"{method:15s} slope {fit.slope:+.3f} vs {fit.abscissa:12s} r2 {fit.r2:.4f} "
          f"(fit used n = {fit.used_n})")
