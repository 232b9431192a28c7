"""SE/DE-Sinc approximation on (0, inf), with and without boundary treatment.

The boundary-treated variants approximate ``f~`` with limits ``q`` at 0 and
``p`` at infinity by subtracting the blend ``q e^{-t} + p (1 - e^{-t})`` and
Sinc-interpolating the remainder.

This module also evaluates the explicit DE error-bound constants.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .sinc import Mesh, sinc_matrix
from .specfun import arsinh, stable_sigmoid
from .transform import TransformKind, blend_argument, forward, inverse

__all__ = [
    "Approximant",
    "build_se",
    "build_se_boundary",
    "build_de",
    "build_de_boundary",
    "evaluate",
    "boundary_blend",
    "de_bound_constant",
    "de_bound",
    "lemma_5_2_bound",
    "lemma_5_4_bound",
    "holder_to_Cdd_de",
    "holder_to_Cdd_se",
    "c_d",
    "c_tilde_d",
]


@dataclass(frozen=True, eq=False)
class Approximant:
    """Node coefficients of a Sinc approximation plus optional boundary limits.

    ``coeffs[k]`` belongs to index ``j = k - M``.  For plain approximants
    ``p = q = 0`` and ``boundary_treated`` is False.
    """

    mesh: Mesh
    coeffs: np.ndarray
    p: float = 0.0
    q: float = 0.0
    boundary_treated: bool = False

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.shape != (self.mesh.l,):
            raise ValueError(f"expected {self.mesh.l} coefficients, got shape {coeffs.shape}")
        if not self.boundary_treated and (self.p != 0 or self.q != 0):
            raise ValueError("p and q must be zero without boundary treatment")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, t):
        return evaluate(self, t)


def _node_values(f, mesh):
    t = forward(mesh.kind, mesh.points)
    vals = np.asarray(f(t), dtype=float)
    return np.broadcast_to(vals, t.shape).astype(float)


def _require_kind(mesh, kind):
    if mesh.kind is not kind:
        raise DomainError(f"expected a {kind.value} mesh, got {mesh.kind.value}")


def _boundary_coeffs(values, p, q, u):
    # (f - q) s(-u) + (f - p) s(u) equals f - q s(-u) - p s(u) because
    # s(u) + s(-u) = 1, and vanishes exactly when f = p = q.
    return (values - q) * stable_sigmoid(-u) + (values - p) * stable_sigmoid(u)


def build_se(f, mesh):
    """SE-Sinc approximation ``sum_j f(psi(jh)) S(j,h)(psi^{-1}(t))``.

    ``f`` is called once with the array of all nodes.
    """
    _require_kind(mesh, TransformKind.SE)
    return Approximant(mesh, _node_values(f, mesh))


def build_se_boundary(f, p, q, mesh):
    _require_kind(mesh, TransformKind.SE)
    u = blend_argument(mesh.kind, mesh.points)
    coeffs = _boundary_coeffs(_node_values(f, mesh), p, q, u)
    return Approximant(mesh, coeffs, p=float(p), q=float(q), boundary_treated=True)


def _require_symmetric(mesh):
    _require_kind(mesh, TransformKind.DE)
    if mesh.M != mesh.N:
        raise DomainError("DE-Sinc approximation uses M = N = n")


def build_de(f, mesh):
    """DE-Sinc approximation ``sum_{|j|<=n} f(phi(jh)) S(j,h)(phi^{-1}(t))``."""
    _require_symmetric(mesh)
    return Approximant(mesh, _node_values(f, mesh))


def build_de_boundary(f, p, q, mesh):
    """Boundary-treated DE-Sinc approximation.

    Args:
        f: callable on arrays of ``t > 0``.
        p: limit of ``f`` as ``t -> inf``.
        q: limit of ``f`` as ``t -> 0``.
        mesh: symmetric DE mesh, e.g. from :func:`sincivp.sinc.de_mesh_symmetric`.
    """
    _require_symmetric(mesh)
    u = blend_argument(mesh.kind, mesh.points)
    coeffs = _boundary_coeffs(_node_values(f, mesh), p, q, u)
    return Approximant(mesh, coeffs, p=float(p), q=float(q), boundary_treated=True)


def boundary_blend(q, p, t):
    """``(q + p (e^t - 1)) / e^t`` written as ``q + (p - q)(1 - e^{-t})``.

    ``q`` and ``p`` may carry a trailing component axis; ``t`` is 1-D.
    Exact at ``t = 0`` (returns ``q``).  Callers handle ``t = inf``.
    """
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    ramp = -np.expm1(-np.asarray(t, dtype=float))
    if q.ndim:
        ramp = ramp[:, None]
    return q + (p - q) * ramp


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0):
        raise DomainError("evaluation points must satisfy t >= 0")
    return t


def evaluate(a, t):
    """Evaluate an approximant at ``t >= 0``; ``t = inf`` is allowed.

    At ``t = 0`` and ``t = inf`` the Sinc sum vanishes, so boundary-treated
    approximants return exactly ``q`` and ``p`` there.
    """
    t = _check_t(t)
    scalar = t.ndim == 0
    t1 = np.atleast_1d(t)
    out = sinc_matrix(a.mesh, inverse(a.mesh.kind, t1)) @ a.coeffs
    if a.boundary_treated:
        out = out + boundary_blend(a.q, a.p, t1)
        out = np.where(t1 == 0, a.q, out)
        out = np.where(np.isposinf(t1), a.p, out)
    return float(out[0]) if scalar else out


def _check_de_params(mu, d):
    if not (0 < mu <= 1):
        raise DomainError(f"mu must lie in (0, 1], got {mu}")
    if not (0 < d < 0.5 * math.pi):
        raise DomainError(f"d must lie in (0, pi/2), got {d}")


def _check_constant(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def _strip_cosines(d):
    return math.cos(0.5 * math.pi * math.sin(d)), math.cos(d)


def de_bound_constant(C, mu, d):
    """Explicit constant ``C_dagger`` of the DE-Sinc error bound.

    For ``|f(z)| <= C |z|^mu |e^{-z}|^mu`` on ``phi(D_d)``::

        sup |f - DE-Sinc(f)| <= C_dagger * exp(-pi d n / arsinh(d n / mu))

    The truncation term carries ``(1 + (d/mu)^2)^((1-mu)/2)``, which is what
    ``cosh(n h)^(1-mu)`` becomes at ``n = 1``.
    """
    _check_constant("C", C)
    _check_de_params(mu, d)
    a = arsinh(d / mu)
    cos_strip, cos_d = _strip_cosines(d)
    disc = 2.0 / (
        math.pi
        * d
        * (-math.expm1(-2.0 * math.pi * d / a))
        * cos_strip ** (2.0 * mu)
        * cos_d ** (1.0 + mu)
    )
    trunc = math.exp(-math.pi * d * (a - 1.0) / a) / (
        a * (1.0 + (d / mu) ** 2) ** ((1.0 - mu) / 2.0)
    )
    return 2.0 * C / (mu * math.pi ** (1.0 - mu)) * (disc + trunc)


def _de_exponent(n, mu, d):
    return math.pi * d * n / arsinh(d * n / mu)


def de_bound(n, C, mu, d):
    """``C_dagger(C, mu, d) * exp(-pi d n / arsinh(d n / mu))``."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    return de_bound_constant(C, mu, d) * math.exp(-_de_exponent(n, mu, d))


def lemma_5_2_bound(h, C, mu, d):
    """Discretisation-error bound of the (untruncated) DE-Sinc series at step ``h``."""
    _check_constant("C", C)
    _check_constant("h", h)
    _check_de_params(mu, d)
    cos_strip, cos_d = _strip_cosines(d)
    num = 4.0 * C * math.exp(-math.pi * d / h)
    den = (
        math.pi ** (2.0 - mu)
        * d
        * mu
        * (-math.expm1(-2.0 * math.pi * d / h))
        * cos_strip ** (2.0 * mu)
        * cos_d ** (1.0 + mu)
    )
    return num / den


def lemma_5_4_bound(n, h, C, mu):
    """Truncation-error bound of the DE-Sinc series cut at ``|j| <= n``."""
    _check_constant("C", C)
    _check_constant("h", h)
    if not (0 < mu <= 1):
        raise DomainError(f"mu must lie in (0, 1], got {mu}")
    nh = n * h
    return (
        2.0
        * C
        * math.pi ** (mu - 1.0)
        * math.exp(-math.pi * mu * math.sinh(nh))
        / (mu * h * math.cosh(nh) ** (1.0 - mu))
    )


def c_d(d):
    """``1 + 1/cos((pi/2) sin d)``."""
    return 1.0 + 1.0 / math.cos(0.5 * math.pi * math.sin(d))


def c_tilde_d(d):
    """``1 + 1/cos(d/2)``."""
    return 1.0 + 1.0 / math.cos(0.5 * d)


def holder_to_Cdd_de(H, mu, d):
    """Effective ``C`` for a boundary-treated DE approximation.

    If ``|f~(z) - q| <= H |z|^mu`` and ``|f~(z) - p| <= H |e^{-z}|^mu`` on
    ``phi(D_d)``, the remainder after the boundary blend satisfies the DE
    decay condition with the constant returned here.
    """
    _check_constant("H", H)
    _check_de_params(mu, d)
    cd = c_d(d)
    cos_strip = math.cos(0.5 * math.pi * math.sin(d))
    return H * ((cd / math.log1p(cd)) ** mu + 1.0) / cos_strip ** (1.0 - mu)


def holder_to_Cdd_se(H, alpha, beta, d):
    """SE counterpart of :func:`holder_to_Cdd_de` (Holder exponents ``alpha``, ``beta``)."""
    _check_constant("H", H)
    if not (0 < alpha <= 1 and 0 < beta <= 1):
        raise DomainError("alpha and beta must lie in (0, 1]")
    if not (0 < d < math.pi):
        raise DomainError(f"d must lie in (0, pi), got {d}")
    ct = c_tilde_d(d)
    lg = math.log1p(ct)
    k = (1.0 + lg) / lg * ct
    cos_half = math.cos(0.5 * d)
    return H * (k**alpha / cos_half ** (1.0 - alpha) + 1.0 / cos_half ** (1.0 - beta))
