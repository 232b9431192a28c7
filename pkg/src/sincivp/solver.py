"""Sinc-Nystrom and Sinc-collocation solvers for ``y' = K(t) y + g(t)``, ``y(0) = r``.

The Nystrom method discretises the Volterra form
``y(t) = r + int_0^t (K y + g) ds`` by SE/DE-Sinc indefinite integration and
solves for the node values.  The collocation method re-expands those node
values in the boundary-treated Sinc basis, so evaluation needs no sine
integral.
"""

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .approx import boundary_blend
from .errors import DomainError, SingularMatrixError
from .sinc import Mesh, de_mesh_indef, indef_matrix, se_mesh, sinc_matrix
from .specfun import si_pi_multiples, stable_sigmoid
from .transform import TransformKind, blend_argument, derivative, forward, inverse

__all__ = [
    "ProblemSpec",
    "DiscreteSolution",
    "make_mesh",
    "assemble_system",
    "integration_matrix",
    "lu_solve",
    "inf_norm_inverse",
    "solve_nystrom",
    "eval_nystrom",
    "build_collocation",
    "eval_collocation",
]

_PIVOT_FLOOR = 1e-300
_EXACT_NORM_LIMIT = 2000


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """A linear initial value problem on (0, inf) with exponentially decaying solution.

    ``K(t)`` returns an ``(m, m)`` array and ``g(t)`` an ``(m,)`` array for a
    scalar ``t``.  ``se_params`` and ``de_params`` are ``(alpha, beta, d)``
    triples certified by whoever builds the problem; the library does not
    check analyticity.
    """

    name: str
    m: int
    K: Callable[[float], np.ndarray]
    g: Callable[[float], np.ndarray]
    r: np.ndarray
    se_params: tuple
    de_params: tuple
    exact: Optional[Callable] = None
    description: str = ""

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float).reshape(-1)
        if self.m < 1 or r.shape != (self.m,):
            raise DomainError(f"initial value must have {self.m} components")
        object.__setattr__(self, "r", r)
        for label, params, dmax in (
            ("se_params", self.se_params, math.pi),
            ("de_params", self.de_params, 0.5 * math.pi),
        ):
            alpha, beta, d = (float(v) for v in params)
            if not (0 < alpha <= 1):
                raise DomainError(f"{label}: alpha must lie in (0, 1], got {alpha}")
            if not beta > 0:
                raise DomainError(f"{label}: beta must be positive, got {beta}")
            if not (0 < d < dmax):
                raise DomainError(f"{label}: d must lie in (0, {dmax:.6g}), got {d}")
            object.__setattr__(self, label, (alpha, beta, d))

    def params(self, kind):
        return self.se_params if TransformKind.parse(kind) is TransformKind.SE else self.de_params

    def with_params(self, kind, alpha=None, beta=None, d=None):
        """Copy with some of ``(alpha, beta, d)`` replaced for one transform."""
        kind = TransformKind.parse(kind)
        old = self.params(kind)
        new = tuple(o if v is None else v for o, v in zip(old, (alpha, beta, d)))
        key = "se_params" if kind is TransformKind.SE else "de_params"
        return replace(self, **{key: new})


@dataclass(frozen=True, eq=False)
class DiscreteSolution:
    """Solved node values of a Sinc-Nystrom system.

    Attributes:
        mesh: mesh the system was built on.
        Y: ``l*m`` node values, component-major (all of ``y_1`` first).
        kind: transform used.
        p_inf: limit of the Nystrom solution as ``t -> inf``.
        inv_norm_estimate: ``||A^{-1}||_inf`` of the system matrix.
        problem: the problem solved.
        weights: ``(l, m)`` array ``(K Y + g)(T(jh)) T'(jh)``.
        coeffs: ``(l, m)`` collocation coefficients, set by :func:`build_collocation`.
    """

    mesh: Mesh
    Y: np.ndarray
    kind: TransformKind
    p_inf: np.ndarray
    inv_norm_estimate: float
    problem: ProblemSpec
    weights: np.ndarray = field(repr=False)
    coeffs: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("Y", "p_inf", "weights", "coeffs"):
            value = getattr(self, name)
            if value is not None:
                arr = np.array(value, dtype=float)
                arr.setflags(write=False)
                object.__setattr__(self, name, arr)
        if self.Y.shape != (self.mesh.l * self.problem.m,):
            raise ValueError("Y must have l*m entries")
        if not np.all(np.isfinite(self.p_inf)):
            raise ValueError("p_inf must be finite")

    @property
    def node_values(self):
        """``(l, m)`` view of :attr:`Y`."""
        return self.Y.reshape(self.problem.m, self.mesh.l).T

    @property
    def nodes(self):
        return forward(self.kind, self.mesh.points)

    @property
    def is_collocation(self):
        return self.coeffs is not None


def make_mesh(problem, n, kind):
    """Mesh used by the solvers: :func:`se_mesh` for SE, :func:`de_mesh_indef` for DE."""
    kind = TransformKind.parse(kind)
    alpha, beta, d = problem.params(kind)
    if kind is TransformKind.SE:
        return se_mesh(alpha, beta, d, n)
    return de_mesh_indef(alpha, beta, d, n)


def integration_matrix(l):
    """``l x l`` matrix with entries ``1/2 + Si(pi (i - j)) / pi``."""
    si = si_pi_multiples(l - 1)
    k = np.arange(l)
    diff = k[:, None] - k[None, :]
    return 0.5 + np.sign(diff) * si[np.abs(diff)] / math.pi


def _coefficients_at_nodes(problem, t_nodes):
    Kn = np.empty((t_nodes.size, problem.m, problem.m))
    Gn = np.empty((t_nodes.size, problem.m))
    for i, t in enumerate(t_nodes):
        Kn[i] = np.asarray(problem.K(float(t)), dtype=float).reshape(problem.m, problem.m)
        Gn[i] = np.asarray(problem.g(float(t)), dtype=float).reshape(problem.m)
    return Kn, Gn


def _assemble(problem, mesh):
    x = mesh.points
    t = forward(mesh.kind, x)
    Kn, Gn = _coefficients_at_nodes(problem, t)
    l, m = mesh.l, problem.m
    V = mesh.h * integration_matrix(l) * derivative(mesh.kind, x)[None, :]
    # A[a,i,b,j] = delta_ab delta_ij - V[i,j] K_ab(t_j)
    A = np.eye(l * m) - np.einsum("ij,jab->aibj", V, Kn).reshape(l * m, l * m)
    b = (problem.r[:, None] + (V @ Gn).T).reshape(l * m)
    return A, b, Kn, Gn


def assemble_system(problem, mesh):
    """Dense Sinc-Nystrom system ``A Y = b`` of size ``l*m``.

    ``A = I - (I_m kron h I^{(-1)} D)[K_ij]`` and
    ``b = R + (I_m kron h I^{(-1)} D) G`` with ``D`` the diagonal of
    transform derivatives at the nodes.
    """
    A, b, _, _ = _assemble(problem, mesh)
    return A, b


def _lu_factor(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {A.shape}")
    with warnings.catch_warnings():
        # An exact zero pivot is reported below as SingularMatrixError.
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
    diag = np.abs(np.diag(lu))
    if diag.size and diag.min() < _PIVOT_FLOOR:
        k = int(diag.argmin())
        raise SingularMatrixError(f"pivot {k} has magnitude {diag[k]:.3e}")
    return lu, piv


def lu_solve(A, b):
    """Solve ``A x = b`` by LU with partial pivoting.

    Raises:
        SingularMatrixError: if a pivot has magnitude below 1e-300.
    """
    b = np.asarray(b, dtype=float)
    lu, piv = _lu_factor(A)
    if b.shape[0] != lu.shape[0]:
        raise DomainError("right-hand side length does not match the matrix")
    return scipy.linalg.lu_solve((lu, piv), b)


def _inv_norm_from_lu(lu, piv):
    size = lu.shape[0]
    if size <= _EXACT_NORM_LIMIT:
        inv = scipy.linalg.lu_solve((lu, piv), np.eye(size))
        return float(np.abs(inv).sum(axis=1).max())
    # ||A^{-1}||_inf = ||A^{-T}||_1; Higham's estimator beyond desk scale.
    op = scipy.sparse.linalg.LinearOperator(
        (size, size),
        matvec=lambda v: scipy.linalg.lu_solve((lu, piv), v, trans=1),
        rmatvec=lambda v: scipy.linalg.lu_solve((lu, piv), v),
        dtype=float,
    )
    return float(scipy.sparse.linalg.onenormest(op))


def inf_norm_inverse(A):
    """``||A^{-1}||_inf``, exact (unit-vector solves) up to dimension 2000."""
    return _inv_norm_from_lu(*_lu_factor(A))


def solve_nystrom(problem, n, kind):
    """Build the mesh for ``n``, assemble, solve and package the node values.

    Raises:
        SingularMatrixError: if the system matrix is numerically singular;
            the message names the mesh.
    """
    kind = TransformKind.parse(kind)
    mesh = make_mesh(problem, n, kind)
    A, b, Kn, Gn = _assemble(problem, mesh)
    try:
        lu, piv = _lu_factor(A)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            f"{kind.value}-Sinc-Nystrom system for {problem.name!r} is singular "
            f"(n={mesh.n}, M={mesh.M}, N={mesh.N}, h={mesh.h:.6g}): {exc}"
        ) from exc
    Y = scipy.linalg.lu_solve((lu, piv), b)
    inv_norm = _inv_norm_from_lu(lu, piv)
    Yn = Y.reshape(problem.m, mesh.l).T
    weights = (np.einsum("jab,jb->ja", Kn, Yn) + Gn) * derivative(kind, mesh.points)[:, None]
    p_inf = problem.r + mesh.h * weights.sum(axis=0)
    return DiscreteSolution(
        mesh=mesh,
        Y=Y,
        kind=kind,
        p_inf=p_inf,
        inv_norm_estimate=inv_norm,
        problem=problem,
        weights=weights,
    )


def _eval_points(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0):
        raise DomainError("evaluation points must satisfy t >= 0")
    return np.atleast_1d(t), t.ndim == 0


def _pin_ends(out, t1, r, p_inf):
    out[t1 == 0] = r
    out[np.isposinf(t1)] = p_inf
    return out


def eval_nystrom(s, t):
    """Nystrom solution ``r + sum_j w_j J(j,h)(T^{-1}(t))``.

    Returns shape ``(m,)`` for scalar ``t`` and ``(len(t), m)`` otherwise;
    ``t = 0`` gives ``r`` and ``t = inf`` gives ``p_inf`` exactly.
    """
    t1, scalar = _eval_points(t)
    J = indef_matrix(s.mesh, inverse(s.kind, t1))
    out = s.problem.r[None, :] + J @ s.weights
    out = _pin_ends(out, t1, s.problem.r, s.p_inf)
    return out[0] if scalar else out


def build_collocation(s):
    """Collocation view of a Nystrom solution; no new solve.

    ``c_k = Y_k - r s(-u_k) - p_inf s(u_k)`` with ``s`` the logistic function
    and ``u_k = kh`` (SE) or ``pi sinh(kh)`` (DE).
    """
    u = np.asarray(blend_argument(s.kind, s.mesh.points))[:, None]
    Yn = s.node_values
    r = s.problem.r[None, :]
    p = s.p_inf[None, :]
    coeffs = (Yn - r) * stable_sigmoid(-u) + (Yn - p) * stable_sigmoid(u)
    return replace(s, coeffs=coeffs)


def eval_collocation(c, t):
    """Collocation solution ``r e^{-t} + p_inf (1 - e^{-t}) + sum_k c_k S(k,h)(T^{-1}(t))``.

    The Sinc basis is composed with the inverse of the same transform that
    produced the nodes.
    """
    if c.coeffs is None:
        raise DomainError("call build_collocation first")
    t1, scalar = _eval_points(t)
    S = sinc_matrix(c.mesh, inverse(c.kind, t1))
    out = boundary_blend(c.problem.r, c.p_inf, t1) + S @ c.coeffs
    out = _pin_ends(out, t1, c.problem.r, c.p_inf)
    return out[0] if scalar else out
