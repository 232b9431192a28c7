"""Sinc cardinal basis, Sinc indefinite-integration basis and mesh rules."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .specfun import EULER_GAMMA, arsinh, sine_integral
from .transform import TransformKind

__all__ = [
    "Mesh",
    "sinc_basis",
    "indef_basis",
    "sinc_matrix",
    "indef_matrix",
    "se_mesh",
    "de_mesh_symmetric",
    "de_mesh_indef",
    "lebesgue_sum",
    "lebesgue_bound",
]


@dataclass(frozen=True)
class Mesh:
    """Step size and truncation indices ``j = -M, ..., N`` of a Sinc formula.

    Attributes:
        h: step size.
        M: left truncation index.
        N: right truncation index.
        kind: transform the nodes ``transform(j h)`` live under.
        n: the integer the rule was built from.
    """

    h: float
    M: int
    N: int
    kind: TransformKind
    n: int

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise DomainError(f"mesh step must be positive and finite, got {self.h}")
        if self.M < 0 or self.N < 0:
            raise DomainError("truncation indices must be nonnegative")
        object.__setattr__(self, "kind", TransformKind.parse(self.kind))

    @property
    def l(self):
        return self.M + self.N + 1

    @property
    def indices(self):
        return np.arange(-self.M, self.N + 1)

    @property
    def points(self):
        """Nodes ``j h`` on the real line (before transformation)."""
        return self.indices * self.h


def _check_h(h):
    if not h > 0:
        raise DomainError(f"step size h must be positive, got {h}")


def _sinpi_ratio(s):
    """``sin(pi s) / (pi s)``, exact zero at nonzero integers."""
    k = np.round(s)
    frac = s - k
    sign = np.where(np.fmod(k, 2.0) == 0.0, 1.0, -1.0)
    u = math.pi * s
    with np.errstate(invalid="ignore", divide="ignore"):
        val = sign * np.sin(math.pi * frac) / u
    tiny = np.abs(u) < 1e-6
    u2 = u * u
    return np.where(tiny, 1.0 - u2 / 6.0 + u2 * u2 / 120.0, val)


_NODE_SNAP_ULPS = 2.0


def _shifted(j, h, x):
    """``(x - j h)/h`` with +-inf sentinels passed through.

    A quotient ``x/h`` within two ulps of an integer is taken as that
    integer: ``(k*h)/h`` need not round back to ``k``, and the node is only
    known to that accuracy anyway.  Cardinal values then come out exact.
    """
    x = np.asarray(x, dtype=float)
    j = np.asarray(j, dtype=float)
    with np.errstate(invalid="ignore"):
        q = x / h
        k = np.round(q)
        q = np.where(np.abs(q - k) <= _NODE_SNAP_ULPS * np.spacing(np.abs(q)), k, q)
        return q - j


def sinc_basis(j, h, x):
    """``S(j,h)(x) = sin(pi(x - jh)/h) / (pi(x - jh)/h)``; broadcasts over j and x.

    ``x = +-inf`` evaluates to 0.
    """
    _check_h(h)
    s = _shifted(j, h, x)
    finite = np.isfinite(s)
    out = np.where(finite, _sinpi_ratio(np.where(finite, s, 0.0)), 0.0)
    return float(out) if out.ndim == 0 else out


def indef_basis(j, h, x):
    """``J(j,h)(x) = h (1/2 + Si(pi(x - jh)/h)/pi)``.

    ``x = -inf`` gives 0 and ``x = +inf`` gives ``h``.
    """
    _check_h(h)
    s = _shifted(j, h, x)
    finite = np.isfinite(s)
    si = np.zeros(s.shape)
    if finite.any():
        si[finite] = sine_integral(math.pi * s[finite])
    out = np.where(finite, h * (0.5 + si / math.pi), np.where(s > 0, h, 0.0))
    return float(out) if out.ndim == 0 else out


def sinc_matrix(mesh, x):
    """Matrix ``[S(j,h)(x_i)]`` with rows over ``x`` and columns over ``j = -M..N``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return sinc_basis(mesh.indices[None, :], mesh.h, x[:, None])


def indef_matrix(mesh, x):
    """Matrix ``[J(j,h)(x_i)]``, laid out like :func:`sinc_matrix`."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return indef_basis(mesh.indices[None, :], mesh.h, x[:, None])


def _ceil_ratio(num, den, n):
    """Exact ceiling of ``(num/den) * n`` for the given binary floats."""
    return math.ceil(Fraction(num) / Fraction(den) * n)


def _ceil_guarded(value):
    # An index that should be an exact integer can land one ulp above it.
    nearest = round(value)
    if abs(value - nearest) <= 64 * np.spacing(max(abs(value), 1.0)):
        return int(nearest)
    return math.ceil(value)


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _check_positive(**params):
    for name, value in params.items():
        if not (value > 0 and math.isfinite(value)):
            raise DomainError(f"{name} must be positive and finite, got {value}")


def se_mesh(alpha, beta, d, n):
    """Mesh of the SE-Sinc formulas.

    ``mu = min(alpha, beta)``, ``h = sqrt(pi d / (mu n))``; the index on the
    side of the smaller exponent is ``n`` and the other is
    ``ceil(ratio * n)``.
    """
    n = _check_n(n)
    _check_positive(alpha=alpha, beta=beta, d=d)
    if d >= math.pi:
        raise DomainError(f"SE strip half-width must satisfy d < pi, got {d}")
    mu = min(alpha, beta)
    h = math.sqrt(math.pi * d / (mu * n))
    if alpha == beta:
        M = N = n
    elif mu == alpha:
        M, N = n, _ceil_ratio(alpha, beta, n)
    else:
        M, N = _ceil_ratio(beta, alpha, n), n
    return Mesh(h=h, M=M, N=N, kind=TransformKind.SE, n=n)


def _check_de(mu, d):
    _check_positive(mu=mu, d=d)
    if mu > 1:
        raise DomainError(f"DE rules require mu <= 1, got {mu}")
    if d >= 0.5 * math.pi:
        raise DomainError(f"DE strip half-width must satisfy d < pi/2, got {d}")


def de_mesh_symmetric(mu, d, n):
    """DE-Sinc approximation mesh: ``M = N = n``, ``h = arsinh(d n / mu) / n``."""
    n = _check_n(n)
    _check_de(mu, d)
    h = arsinh(d * n / mu) / n
    return Mesh(h=h, M=n, N=n, kind=TransformKind.DE, n=n)


def de_mesh_indef(alpha, beta, d, n):
    """DE-Sinc indefinite-integration mesh.

    Same ``h`` as :func:`de_mesh_symmetric` with ``mu = min(alpha, beta)``;
    the long side gets ``ceil(arsinh(ratio * sinh(n h)) / h)`` points.
    """
    n = _check_n(n)
    _check_positive(alpha=alpha, beta=beta, d=d)
    mu = min(alpha, beta)
    _check_de(mu, d)
    h = arsinh(d * n / mu) / n
    if alpha == beta:
        M = N = n
    else:
        ratio = alpha / beta if mu == alpha else beta / alpha
        other = _ceil_guarded(arsinh(ratio * math.sinh(n * h)) / h)
        M, N = (n, other) if mu == alpha else (other, n)
    return Mesh(h=h, M=M, N=N, kind=TransformKind.DE, n=n)


def lebesgue_sum(n, h, x):
    """``sum_{j=-n}^{n} |S(j,h)(x)|``, vectorised over ``x``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _check_h(h)
    x = np.asarray(x, dtype=float)
    j = np.arange(-n, n + 1, dtype=float)
    vals = np.abs(sinc_basis(j, h, x[..., None]))
    out = vals.sum(axis=-1)
    return float(out) if out.ndim == 0 else out


def lebesgue_bound(n):
    """Stenger's bound ``(2/pi) (3/2 + gamma + log(n+1))`` on :func:`lebesgue_sum`."""
    return 2.0 / math.pi * (1.5 + EULER_GAMMA + math.log(n + 1))
