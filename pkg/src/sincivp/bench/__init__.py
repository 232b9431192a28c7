"""Problem registries, convergence studies, lemma checks and the command line."""

from .lemmas import LemmaReport, verify_lemmas
from .problems import (
    FunctionCase,
    builtin_functions,
    builtin_problems,
    get_function,
    get_problem,
)
from .study import (
    ConvergenceReport,
    RateFit,
    StudyConfig,
    StudyRecord,
    fit_rate,
    run_study,
    sup_error,
)

__all__ = [
    "FunctionCase",
    "builtin_functions",
    "builtin_problems",
    "get_function",
    "get_problem",
    "ConvergenceReport",
    "RateFit",
    "StudyConfig",
    "StudyRecord",
    "fit_rate",
    "run_study",
    "sup_error",
    "LemmaReport",
    "verify_lemmas",
]
