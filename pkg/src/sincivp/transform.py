"""SE and DE variable transformations from the real line onto (0, inf).

SE: ``t = psi(x) = log(1 + e^x)``.
DE: ``t = phi(x) = log(1 + e^{pi sinh x})``.

Inverses accept the boundary points ``t = 0`` and ``t = inf`` and return the
sentinels ``-inf`` and ``+inf``; the Sinc bases treat those sentinels as exact
limits.
"""

import enum
import math

import numpy as np

from .errors import DomainError
from .specfun import arsinh, log1p_exp, stable_sigmoid

__all__ = [
    "TransformKind",
    "se_forward",
    "se_derivative",
    "se_inverse",
    "de_forward",
    "de_derivative",
    "de_inverse",
    "se_forward_complex",
    "de_forward_complex",
    "forward",
    "derivative",
    "inverse",
    "blend_argument",
]

# exp(745) overflows; beyond this the logistic factor is exactly 0 or 1.
_EXP_CLAMP = 745.0


class TransformKind(enum.Enum):
    SE = "SE"
    DE = "DE"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise DomainError(f"unknown transform kind {value!r}; expected SE or DE") from None


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _finish(out, scalar):
    return float(out) if scalar else out


def _check_t(arr):
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("transform inverse requires t >= 0")


def se_forward(x):
    return log1p_exp(x)


def se_derivative(x):
    return stable_sigmoid(x)


def se_inverse(t):
    """``log(e^t - 1)``; ``t = 0`` maps to ``-inf`` and ``t = inf`` to ``inf``."""
    arr, scalar = _as_array(t)
    _check_t(arr)
    with np.errstate(divide="ignore"):
        small = np.log(np.expm1(np.minimum(arr, 1.0)))
        large = arr + np.log1p(-np.exp(-np.maximum(arr, 1.0)))
    out = np.where(arr <= 1.0, small, large)
    return _finish(out, scalar)


def _pi_sinh(x):
    with np.errstate(over="ignore"):
        return math.pi * np.sinh(x)


def de_forward(x):
    arr, scalar = _as_array(x)
    return _finish(log1p_exp(_pi_sinh(arr)), scalar)


def de_derivative(x):
    """``phi'(x) = pi cosh(x) / (1 + e^{-pi sinh x})``."""
    arr, scalar = _as_array(x)
    u = _pi_sinh(arr)
    sig = stable_sigmoid(np.clip(u, -_EXP_CLAMP, _EXP_CLAMP))
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        direct = math.pi * np.cosh(arr) * sig
        # Left tail: pi cosh(x) e^u in log space so the product underflows
        # honestly instead of pairing a clamped sigmoid with a huge cosh.
        ax = np.abs(arr)
        log_cosh = ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)
        tail = np.exp(math.log(math.pi) + log_cosh + u - np.log1p(np.exp(np.minimum(u, 0.0))))
    out = np.where(u < -30.0, tail, direct)
    return _finish(out, scalar)


def de_inverse(t):
    """``arsinh(log(e^t - 1) / pi)`` with the same sentinels as :func:`se_inverse`."""
    arr, scalar = _as_array(t)
    s = np.asarray(se_inverse(arr), dtype=float)
    finite = np.isfinite(s)
    out = np.where(finite, 0.0, s)
    if finite.any():
        out[finite] = arsinh(s[finite] / math.pi)
    return _finish(out, scalar)


def _complex_input(zeta, half_width, name):
    arr = np.asarray(zeta, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} requires finite input")
    if np.any(np.abs(arr.imag) >= half_width):
        raise DomainError(f"{name}: |Im zeta| must be below {half_width}")
    return arr, arr.ndim == 0


def _complex_log1p(u):
    # numpy's complex log1p forms 1 + u and loses tiny u; Kahan's correction
    # log(1+u) * u / ((1+u) - 1) restores full relative accuracy.
    v = 1.0 + u
    exact = v == 1.0
    den = np.where(exact, 1.0, v - 1.0)
    # u/den in real arithmetic; numpy's complex division overflows when den
    # has a subnormal imaginary part.
    mag = np.abs(den)
    ur, ui = u.real / mag, u.imag / mag
    dr, di = den.real / mag, den.imag / mag
    ratio = (ur * dr + ui * di) + 1j * (ui * dr - ur * di)
    return np.where(exact, u, np.log(v) * ratio)


def _log1p_exp_complex(w):
    # Branch: log1p(e^w) for Re w <= 0, w + log1p(e^-w) otherwise.  Both pieces
    # are analytic where used and agree on Re w = 0 when |Im w| < pi.
    neg = w.real <= 0
    wn = np.where(neg, w, 0.0)
    wp = np.where(neg, 0.0, w)
    return np.where(neg, _complex_log1p(np.exp(wn)), wp + _complex_log1p(np.exp(-wp)))


def se_forward_complex(zeta):
    """``log(1 + e^zeta)`` on the strip ``|Im zeta| < pi``."""
    arr, scalar = _complex_input(zeta, math.pi, "se_forward_complex")
    out = _log1p_exp_complex(arr)
    return complex(out) if scalar else out


def de_forward_complex(zeta):
    """``log(1 + e^{pi sinh zeta})`` on the strip ``|Im zeta| < pi/2``.

    Returns the analytic continuation of the real transform.  On the strip
    ``Re(pi sinh zeta)`` has the sign of ``Re zeta``, so the two-piece formula
    in :func:`_log1p_exp_complex` never switches branch inside a half strip,
    and on ``Re zeta = 0`` it agrees with the principal logarithm because
    ``|Im(pi sinh(iy))| < pi`` there.
    """
    arr, scalar = _complex_input(zeta, 0.5 * math.pi, "de_forward_complex")
    out = _log1p_exp_complex(math.pi * np.sinh(arr))
    return complex(out) if scalar else out


_FORWARD = {TransformKind.SE: se_forward, TransformKind.DE: de_forward}
_DERIVATIVE = {TransformKind.SE: se_derivative, TransformKind.DE: de_derivative}
_INVERSE = {TransformKind.SE: se_inverse, TransformKind.DE: de_inverse}


def forward(kind, x):
    return _FORWARD[TransformKind.parse(kind)](x)


def derivative(kind, x):
    return _DERIVATIVE[TransformKind.parse(kind)](x)


def inverse(kind, t):
    return _INVERSE[TransformKind.parse(kind)](t)


def blend_argument(kind, x):
    """Exponent ``u`` with ``e^{transform(x)} = 1 + e^u``: ``x`` (SE), ``pi sinh x`` (DE)."""
    if TransformKind.parse(kind) is TransformKind.SE:
        return np.asarray(x, dtype=float) if np.ndim(x) else float(x)
    arr, scalar = _as_array(x)
    return _finish(_pi_sinh(arr), scalar)
