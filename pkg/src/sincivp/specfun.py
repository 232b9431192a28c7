"""Scalar special functions and numerically stable helpers.

Every function here accepts a Python float or a NumPy array and returns the
same kind of object.  Nothing in this module allocates state except the
read-only cache of ``Si(pi*k)`` values used when assembling Sinc-Nystrom
matrices.
"""

import math
import threading
from fractions import Fraction

import numpy as np

from .errors import DomainError

__all__ = [
    "sine_integral",
    "arsinh",
    "stable_sigmoid",
    "log1p_exp",
    "si_pi_multiples",
    "EULER_GAMMA",
]

EULER_GAMMA = 0.5772156649015329

# Maclaurin coefficients (-1)^k / ((2k+1) (2k+1)!), exact before rounding.
# Eighteen terms push the truncation below 1e-20 for |x| <= 4.
_SI_SERIES = np.array(
    [
        float(Fraction((-1) ** k, (2 * k + 1) * math.factorial(2 * k + 1)))
        for k in range(18)
    ]
)
_SI_SWITCH = 4.0
_CF_MAXITER = 500
_CF_TINY = 1e-300


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _finish(out, scalar):
    return float(out) if scalar else out


def _require_finite(arr, name):
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} requires finite input")


def _si_series(x):
    x2 = x * x
    acc = np.full_like(x, _SI_SERIES[-1])
    for c in _SI_SERIES[-2::-1]:
        acc = acc * x2 + c
    return x * acc


def _si_auxiliary(x):
    """Return the auxiliary functions f(x), g(x) for x > 0.

    ``g(x) - i f(x)`` is the continued fraction
    ``1/(ix+1 - 1/(ix+3 - 4/(ix+5 - ...)))`` of ``exp(ix) E1(ix)``,
    evaluated with the modified Lentz algorithm.
    """
    b = 1.0 + 1j * x
    c = np.full(x.shape, 1.0 / _CF_TINY, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for i in range(1, _CF_MAXITER):
        a = -float(i * i)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) > 1e-17
        if not active.any():
            break
    return -h.imag, h.real


def sine_integral(x):
    """Sine integral ``Si(x) = int_0^x sin(t)/t dt``.

    Uses the Maclaurin series for ``|x| <= 4`` and the auxiliary-function
    form ``pi/2 - f(x) cos x - g(x) sin x`` beyond, which keeps the absolute
    error near 1e-16 on the whole real line.

    Raises:
        DomainError: if any input is NaN or infinite.
    """
    arr, scalar = _as_array(x)
    _require_finite(arr, "sine_integral")
    ax = np.abs(arr)
    out = np.empty_like(ax)
    small = ax <= _SI_SWITCH
    if small.any():
        out[small] = _si_series(ax[small])
    big = ~small
    if big.any():
        xb = ax[big]
        f, g = _si_auxiliary(xb)
        out[big] = 0.5 * math.pi - f * np.cos(xb) - g * np.sin(xb)
    out = np.copysign(out, arr)
    return _finish(out, scalar)


_si_cache = np.zeros(1)
_si_cache_lock = threading.Lock()


def si_pi_multiples(kmax):
    """Return ``Si(pi*k)`` for ``k = 0, ..., kmax`` as a read-only array.

    Values are computed once and reused across calls; the cache only grows.
    """
    global _si_cache
    if kmax < 0:
        raise DomainError("kmax must be nonnegative")
    cache = _si_cache
    if cache.size <= kmax:
        with _si_cache_lock:
            cache = _si_cache
            if cache.size <= kmax:
                size = max(kmax + 1, 2 * cache.size)
                cache = sine_integral(math.pi * np.arange(size, dtype=float))
                cache.setflags(write=False)
                _si_cache = cache
    return cache[: kmax + 1]


def arsinh(x):
    """Inverse hyperbolic sine ``log(x + sqrt(1 + x^2))``.

    Evaluated on ``|x|`` and sign-restored, with a ``log1p`` form near zero
    and ``log(2|x|)`` once ``x^2`` would overflow.
    """
    arr, scalar = _as_array(x)
    _require_finite(arr, "arsinh")
    ax = np.abs(arr)
    with np.errstate(over="ignore"):
        huge = ax > 1e150
        safe = np.where(huge, 1.0, ax)
        out = np.log1p(safe + safe * safe / (1.0 + np.sqrt(1.0 + safe * safe)))
        out = np.where(huge, math.log(2.0) + np.log(np.where(huge, ax, 1.0)), out)
    out = np.copysign(out, arr)
    return _finish(out, scalar)


def stable_sigmoid(u):
    """Logistic function ``1/(1 + exp(-u))`` that never overflows.

    Accepts ``+-inf`` and saturates exactly to 1 or 0 there.
    """
    arr, scalar = _as_array(u)
    out = np.empty_like(arr)
    pos = arr >= 0
    with np.errstate(over="ignore"):
        out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
        e = np.exp(arr[~pos])
        out[~pos] = e / (1.0 + e)
    return _finish(out, scalar)


def log1p_exp(u):
    """``log(1 + exp(u))`` computed as ``max(u, 0) + log1p(exp(-|u|))``."""
    arr, scalar = _as_array(u)
    with np.errstate(invalid="ignore"):
        out = np.maximum(arr, 0.0) + np.log1p(np.exp(-np.abs(arr)))
    # -inf gives max(-inf,0)+log1p(0) = 0, +inf gives inf; both are the limits.
    return _finish(out, scalar)
