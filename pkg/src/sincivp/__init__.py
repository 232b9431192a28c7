"""Sinc-Nystrom and Sinc-collocation solvers for linear ODE systems on (0, inf).

Submodules:

* :mod:`sincivp.specfun` -- sine integral, stable elementary helpers.
* :mod:`sincivp.transform` -- SE and DE variable transformations.
* :mod:`sincivp.sinc` -- Sinc bases, meshes and Lebesgue constants.
* :mod:`sincivp.approx` -- function approximation and explicit DE bounds.
* :mod:`sincivp.quad` -- indefinite integration.
* :mod:`sincivp.solver` -- Nystrom and collocation solvers.
* :mod:`sincivp.bench` -- test problems, studies, lemma checks, CLI.
"""

from .errors import DomainError, InsufficientDataError, SingularMatrixError, UnknownNameError
from .solver import (
    DiscreteSolution,
    ProblemSpec,
    build_collocation,
    eval_collocation,
    eval_nystrom,
    solve_nystrom,
)
from .transform import TransformKind

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "InsufficientDataError",
    "SingularMatrixError",
    "UnknownNameError",
    "DiscreteSolution",
    "ProblemSpec",
    "TransformKind",
    "build_collocation",
    "eval_collocation",
    "eval_nystrom",
    "solve_nystrom",
]
