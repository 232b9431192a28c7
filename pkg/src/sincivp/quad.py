"""SE/DE-Sinc indefinite integration ``int_0^t f(s) ds`` on (0, inf)."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .sinc import Mesh, indef_matrix
from .transform import TransformKind, derivative, forward, inverse

__all__ = [
    "IndefiniteApproximant",
    "build_se_indefinite",
    "build_de_indefinite",
    "evaluate_indefinite",
]

# Weights below this are denormal tails of the DE map; they cannot move a sum.
_WEIGHT_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class IndefiniteApproximant:
    """Weights ``w_j = f(T(jh)) T'(jh)`` of ``sum_j w_j J(j,h)(T^{-1}(t))``."""

    mesh: Mesh
    weights: np.ndarray
    kind: TransformKind

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.mesh.l,):
            raise ValueError(f"expected {self.mesh.l} weights, got shape {w.shape}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __call__(self, t):
        return evaluate_indefinite(self, t)

    @property
    def total(self):
        """Approximation of ``int_0^inf f``: ``h * sum(w)``."""
        return self.mesh.h * float(np.sum(self.weights))


def _build(f, mesh, kind):
    if mesh.kind is not kind:
        raise DomainError(f"expected a {kind.value} mesh, got {mesh.kind.value}")
    x = mesh.points
    t = forward(kind, x)
    vals = np.broadcast_to(np.asarray(f(t), dtype=float), t.shape)
    with np.errstate(invalid="ignore"):
        w = vals * derivative(kind, x)
    # f may be nan/inf where the transform underflowed to t = 0 or overflowed;
    # the Jacobian there is zero so the product is dropped.
    w = np.where(derivative(kind, x) == 0.0, 0.0, w)
    w = np.where(np.abs(w) < _WEIGHT_FLOOR, 0.0, w)
    return IndefiniteApproximant(mesh, w, kind)


def build_se_indefinite(f, mesh):
    """SE-Sinc indefinite integration of ``f`` on ``mesh`` (from :func:`se_mesh`)."""
    return _build(f, mesh, TransformKind.SE)


def build_de_indefinite(f, mesh):
    """DE-Sinc indefinite integration of ``f`` on ``mesh`` (from :func:`de_mesh_indef`)."""
    return _build(f, mesh, TransformKind.DE)


def evaluate_indefinite(q, t):
    """Evaluate at ``t >= 0``; ``t = 0`` gives 0 and ``t = inf`` gives :attr:`total`."""
    t = np.asarray(t, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0):
        raise DomainError("evaluation points must satisfy t >= 0")
    scalar = t.ndim == 0
    t1 = np.atleast_1d(t)
    out = indef_matrix(q.mesh, inverse(q.kind, t1)) @ q.weights
    out = np.where(np.isposinf(t1), q.total, out)
    return float(out[0]) if scalar else out
