"""Built-in test problems with closed-form solutions.

Two registries live here:

* ``builtin_problems()`` -- initial value problems for the Nystrom and
  collocation methods.
* ``builtin_functions()`` -- scalar functions on (0, inf) for the plain
  approximation and indefinite-integration studies.

All solutions are combinations of ``e^{-lambda t}`` with ``lambda >= 1``.  On
``psi(D_d)`` and ``phi(D_d)`` these satisfy the decay conditions with
``alpha = beta = 1``.  ``d`` can approach ``pi`` (SE) or ``pi/2`` (DE); the
defaults ``pi/2`` and ``1`` leave a margin.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..approx import c_d
from ..errors import UnknownNameError
from ..solver import ProblemSpec

__all__ = [
    "DEFAULT_D_SE",
    "DEFAULT_D_DE",
    "FunctionCase",
    "builtin_problems",
    "get_problem",
    "builtin_functions",
    "get_function",
]

DEFAULT_D_SE = 0.5 * math.pi
DEFAULT_D_DE = 1.0

_DEFAULT_SE = (1.0, 1.0, DEFAULT_D_SE)
_DEFAULT_DE = (1.0, 1.0, DEFAULT_D_DE)


def _constant_matrix(mat):
    mat = np.array(mat, dtype=float)
    mat.setflags(write=False)
    return lambda t: mat


def _zero(m):
    z = np.zeros(m)
    z.setflags(write=False)
    return lambda t: z


def _modal_solution(K, r):
    """Closed form ``y(t) = V exp(Lambda t) V^{-1} r`` for symmetric constant ``K``."""
    lam, V = np.linalg.eigh(np.asarray(K, dtype=float))
    amp = V.T @ np.asarray(r, dtype=float)

    def exact(t):
        t = np.asarray(t, dtype=float)
        modes = np.exp(np.multiply.outer(t, lam)) * amp
        return modes @ V.T

    return exact


def _decay1():
    return ProblemSpec(
        name="decay1",
        m=1,
        K=_constant_matrix([[-1.0]]),
        g=_zero(1),
        r=[1.0],
        se_params=_DEFAULT_SE,
        de_params=_DEFAULT_DE,
        exact=lambda t: np.exp(-np.asarray(t, dtype=float))[..., None],
        description="y' = -y, y(0) = 1; y = exp(-t)",
    )


def _forced1():
    def g(t):
        return np.array([math.exp(-t)])

    def exact(t):
        t = np.asarray(t, dtype=float)
        return (np.exp(-t) - np.exp(-2.0 * t))[..., None]

    return ProblemSpec(
        name="forced1",
        m=1,
        K=_constant_matrix([[-2.0]]),
        g=g,
        r=[0.0],
        se_params=_DEFAULT_SE,
        de_params=_DEFAULT_DE,
        exact=exact,
        description="y' = -2y + exp(-t), y(0) = 0; y = exp(-t) - exp(-2t)",
    )


def _coupled2():
    K = [[-2.0, 1.0], [1.0, -2.0]]
    r = [1.0, 0.0]
    return ProblemSpec(
        name="coupled2",
        m=2,
        K=_constant_matrix(K),
        g=_zero(2),
        r=r,
        se_params=_DEFAULT_SE,
        de_params=_DEFAULT_DE,
        exact=_modal_solution(K, r),
        description="y' = K y with eigenvalues -1, -3; y(0) = (1, 0)",
    )


def _stiff2():
    K = [[-250.5, 249.5], [249.5, -250.5]]
    r = [2.0, 0.0]
    return ProblemSpec(
        name="stiff2",
        m=2,
        K=_constant_matrix(K),
        g=_zero(2),
        r=r,
        se_params=_DEFAULT_SE,
        de_params=_DEFAULT_DE,
        exact=_modal_solution(K, r),
        description="y' = K y with eigenvalues -1, -500; y(0) = (2, 0)",
    )


_PROBLEM_FACTORIES = {
    "decay1": _decay1,
    "forced1": _forced1,
    "coupled2": _coupled2,
    "stiff2": _stiff2,
}


def builtin_problems():
    """Fresh registry ``name -> ProblemSpec``."""
    return {name: make() for name, make in _PROBLEM_FACTORIES.items()}


def get_problem(name):
    try:
        return _PROBLEM_FACTORIES[name]()
    except KeyError:
        raise UnknownNameError(
            f"unknown problem {name!r}; available: {', '.join(sorted(_PROBLEM_FACTORIES))}"
        ) from None


@dataclass(frozen=True, eq=False)
class FunctionCase:
    """A scalar test function for the approximation and integration studies.

    Attributes:
        f: integrand / function to approximate (vectorised over ``t``).
        antiderivative: ``int_0^t f``, the reference for ``*-indef`` studies.
        boundary: ``(p, q)`` limits when approximations should use the
            boundary treatment, else None.
        decay_constant: ``C`` in ``|f(z)| <= C |z|^mu |e^{-z}|^mu`` on
            ``phi(D_d)`` (plain cases), or None.
        holder: callable ``d -> H`` certifying
            ``|f(z) - q| <= H|z|``, ``|f(z) - p| <= H|e^{-z}|`` on
            ``phi(D_d)`` with ``mu = 1`` (boundary cases), or None.
    """

    name: str
    f: Callable
    antiderivative: Callable
    se_params: tuple = _DEFAULT_SE
    de_params: tuple = _DEFAULT_DE
    boundary: Optional[tuple] = None
    decay_constant: Optional[float] = None
    holder: Optional[Callable[[float], float]] = None
    description: str = ""

    def value(self, t):
        """``f(t)`` with the limits substituted at ``t = 0`` and ``t = inf``."""
        t = np.asarray(t, dtype=float)
        safe = np.where(np.isposinf(t), 0.0, t)
        out = np.asarray(self.f(safe), dtype=float) * np.ones_like(safe)
        limit = self.boundary[0] if self.boundary else 0.0
        return np.where(np.isposinf(t), limit, out)

    def integral(self, t):
        t = np.asarray(t, dtype=float)
        return np.asarray(self.antiderivative(t), dtype=float) * np.ones_like(t)


def _holder_exp(d):
    # |1 - e^{-z}| <= K|z| with K = c_d / log(1 + c_d), and |e^{-z}| <= |e^{-z}|.
    cd = c_d(d)
    return max(1.0, cd / math.log1p(cd))


def _holder_exp2(d):
    # e^{-2z} - 1 = -(1 - e^{-z})(1 + e^{-z}) and |e^{-z}| <= 1/cos((pi/2) sin d)
    # = c_d - 1 on phi(D_d), so |e^{-2z} - 1| <= K c_d |z| and |e^{-2z}| <= (c_d - 1)|e^{-z}|.
    cd = c_d(d)
    return max(cd * cd / math.log1p(cd), cd - 1.0)


_FUNCTION_CASES = {
    "texp": FunctionCase(
        name="texp",
        f=lambda t: t * np.exp(-t),
        antiderivative=lambda t: -np.expm1(-t) - t * np.exp(-t),
        decay_constant=1.0,
        description="t exp(-t); |f(z)| = |z| |e^{-z}| so C = 1, mu = 1",
    ),
    "exp": FunctionCase(
        name="exp",
        f=lambda t: np.exp(-t),
        antiderivative=lambda t: -np.expm1(-t),
        boundary=(0.0, 1.0),
        holder=_holder_exp,
        description="exp(-t); p = 0, q = 1 (boundary remainder vanishes)",
    ),
    "exp2": FunctionCase(
        name="exp2",
        f=lambda t: np.exp(-2.0 * t),
        antiderivative=lambda t: -0.5 * np.expm1(-2.0 * t),
        boundary=(0.0, 1.0),
        holder=_holder_exp2,
        description="exp(-2t); p = 0, q = 1, remainder exp(-2t) - exp(-t)",
    ),
}


def builtin_functions():
    return dict(_FUNCTION_CASES)


def get_function(name):
    try:
        return _FUNCTION_CASES[name]
    except KeyError:
        raise UnknownNameError(
            f"unknown function case {name!r}; available: {', '.join(sorted(_FUNCTION_CASES))}"
        ) from None
