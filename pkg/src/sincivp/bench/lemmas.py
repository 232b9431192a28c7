"""Randomised verification of the inequalities the error analysis relies on.

Every check compares a left-hand side with a proven upper bound at sampled
points.  A point violates the check when ``lhs > rhs * (1 + RELATIVE_SLACK)``.
Monotonicity checks compare neighbours on a sorted grid with a few ulps of
tolerance.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..sinc import lebesgue_bound, lebesgue_sum, sinc_basis
from ..specfun import arsinh
from ..transform import de_forward_complex, se_forward_complex

__all__ = ["RELATIVE_SLACK", "LemmaCheck", "LemmaReport", "verify_lemmas"]

RELATIVE_SLACK = 1e-12
MONOTONE_ULPS = 8
LEBESGUE_NS = (1, 10, 100, 1000)
X_RANGE = 5.0
# Keep sampled strip points a hair inside the open strip.
_EDGE = 1e-9


@dataclass
class LemmaCheck:
    """Outcome of one inequality over all its sample points.

    ``worst_margin`` is the largest ``(lhs - rhs) / |rhs|`` seen; negative
    means every point satisfied the bound with room to spare.
    """

    name: str
    samples: int = 0
    violations: int = 0
    worst_margin: float = -math.inf
    worst_point: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.violations == 0

    def line(self):
        status = "ok" if self.passed else "VIOLATED"
        text = (
            f"{status:8s} {self.name}: {self.violations}/{self.samples} violations, "
            f"worst margin {self.worst_margin:.3e}"
        )
        if not self.passed:
            pts = ", ".join(f"{k}={v!r}" for k, v in self.worst_point.items())
            text += f" at {pts}"
        return text


@dataclass
class LemmaReport:
    seed: int
    samples: int
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def total_violations(self):
        return sum(c.violations for c in self.checks)

    def format(self):
        lines = [c.line() for c in self.checks]
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(
            f"{verdict}: {len(self.checks)} checks, seed {self.seed}, "
            f"{self.samples} samples, {self.total_violations} violations"
        )
        return "\n".join(lines)


def _record(name, lhs, rhs, points):
    """Build a :class:`LemmaCheck` from arrays of ``lhs``, ``rhs`` and coordinates."""
    lhs = np.asarray(lhs, dtype=float).ravel()
    rhs = np.asarray(rhs, dtype=float).ravel()
    check = LemmaCheck(name, samples=lhs.size)
    if lhs.size == 0:
        return check
    bad = ~(lhs <= rhs * (1.0 + RELATIVE_SLACK))
    with np.errstate(divide="ignore", invalid="ignore"):
        margin = np.where(rhs != 0, (lhs - rhs) / np.abs(rhs), np.where(lhs > 0, np.inf, 0.0))
    margin = np.where(np.isnan(margin), np.inf, margin)
    k = int(np.argmax(margin))
    check.violations = int(np.count_nonzero(bad))
    check.worst_margin = float(margin[k])
    check.worst_point = {key: float(np.ravel(val)[k]) for key, val in points.items()}
    return check


def _monotone(name, fn, grid, increasing):
    vals = fn(grid)
    a, b = vals[:-1], vals[1:]
    tol = MONOTONE_ULPS * np.finfo(float).eps * np.maximum(np.abs(a), np.abs(b))
    lhs, rhs = (a - b, tol) if increasing else (b - a, tol)
    # Express as lhs <= rhs with rhs >= 0; a zero tolerance still allows equality.
    check = LemmaCheck(name, samples=max(grid.size - 1, 0))
    if grid.size < 2:
        return check
    bad = lhs > rhs
    scale = np.maximum(np.abs(a), np.finfo(float).tiny)
    margin = (lhs - rhs) / scale
    k = int(np.argmax(margin))
    check.violations = int(np.count_nonzero(bad))
    check.worst_margin = float(margin[k])
    check.worst_point = {"x": float(grid[k]), "x_next": float(grid[k + 1])}
    return check


def _inv_one_plus_exp(w):
    """``1 / (1 + e^w)`` for complex ``w`` without overflow."""
    pos = w.real > 0
    wp = np.where(pos, w, 0.0)
    wn = np.where(pos, 0.0, w)
    return np.where(pos, np.exp(-wp) / (1.0 + np.exp(-wp)), 1.0 / (1.0 + np.exp(wn)))


def _inv_one_plus_exp_real(u):
    return np.exp(-np.logaddexp(0.0, u))


def _strip_points(rng, count, half_width):
    """Uniform ``x`` in ``[-5, 5]``; ``d`` in ``(0, half_width)``; ``|y| < d``."""
    x = rng.uniform(-X_RANGE, X_RANGE, count)
    d = rng.uniform(_EDGE, half_width - _EDGE, count)
    y = d * rng.uniform(-1.0 + _EDGE, 1.0 - _EDGE, count)
    return x, y, d


def _check_sinc(rng, count):
    j = rng.integers(-50, 51, count).astype(float)
    h = rng.uniform(0.01, 2.0, count)
    x = rng.uniform(-100.0, 100.0, count)
    # S(j,h)(x) = S(j,1)(x/h); the basis takes a scalar step.
    lhs = np.abs(sinc_basis(j, 1.0, x / h))
    return _record("|S(j,h)(x)| <= 1", lhs, np.ones(count), {"j": j, "h": h, "x": x})


def _check_lebesgue(rng, count):
    checks = []
    for n in LEBESGUE_NS:
        h = float(rng.uniform(0.05, 2.0))
        x = rng.uniform(-(n + 5) * h, (n + 5) * h, count)
        chunk = max(1, 2_000_000 // (2 * n + 1))
        lhs = np.concatenate(
            [np.atleast_1d(lebesgue_sum(n, h, x[i : i + chunk])) for i in range(0, count, chunk)]
        ) if count else np.empty(0)
        checks.append(
            _record(
                f"Lebesgue sum <= (2/pi)(3/2 + gamma + log(n+1)), n={n}",
                lhs,
                np.full(count, lebesgue_bound(n)),
                {"x": x, "h": np.full(count, h)},
            )
        )
    return checks


def _check_log_strip(rng, count):
    x, y, _ = _strip_points(rng, count, 0.5 * math.pi)
    lhs = np.abs(de_forward_complex(x + 1j * y))
    rhs = (
        math.pi
        * np.cosh(x)
        * _inv_one_plus_exp_real(-math.pi * np.sinh(x) * np.cos(y))
        / (np.cos(0.5 * math.pi * np.sin(y)) * np.cos(y))
    )
    return _record("DE log strip bound", lhs, rhs, {"x": x, "y": y})


def _check_de_reciprocal(rng, count, cd_scale):
    x, y, d = _strip_points(rng, count, 0.5 * math.pi)
    zeta = x + 1j * y
    w = math.pi * np.sinh(zeta)
    cos_y = np.cos(0.5 * math.pi * np.sin(y))
    u = math.pi * np.sinh(x) * np.cos(y)
    pts = {"x": x, "y": y}
    out = [
        _record(
            "DE |1/(1+e^{pi sinh z})| strip bound",
            np.abs(_inv_one_plus_exp(w)),
            _inv_one_plus_exp_real(u) / cos_y,
            pts,
        ),
        _record(
            "DE |1/(1+e^{-pi sinh z})| strip bound",
            np.abs(_inv_one_plus_exp(-w)),
            _inv_one_plus_exp_real(-u) / cos_y,
            pts,
        ),
    ]
    # Image-domain forms with z = phi(zeta), d the strip half-width.
    z = de_forward_complex(zeta)
    cd = cd_scale * (1.0 + 1.0 / np.cos(0.5 * math.pi * np.sin(d)))
    pts = {"x": x, "y": y, "d": d}
    e = np.abs(_inv_one_plus_exp(w))
    one_minus = np.abs(_inv_one_plus_exp(-w))
    out.append(_record("DE sup |e^{-z}| <= 1/cos((pi/2) sin d)", e, cd - 1.0, pts))
    out.append(_record("DE sup |1-e^{-z}| <= 1/cos((pi/2) sin d)", one_minus, cd - 1.0, pts))
    out.append(
        _record(
            "DE |1-e^{-z}| <= (c_d/log(1+c_d))|z|",
            one_minus,
            cd / np.log1p(cd) * np.abs(z),
            pts,
        )
    )
    return out


def _check_se_reciprocal(rng, count, cd_scale):
    x, y, d = _strip_points(rng, count, math.pi)
    zeta = x + 1j * y
    cos_half = np.cos(0.5 * y)
    pts = {"x": x, "y": y}
    out = [
        _record(
            "SE |1/(1+e^{z})| strip bound",
            np.abs(_inv_one_plus_exp(zeta)),
            _inv_one_plus_exp_real(x) / cos_half,
            pts,
        ),
        _record(
            "SE |1/(1+e^{-z})| strip bound",
            np.abs(_inv_one_plus_exp(-zeta)),
            _inv_one_plus_exp_real(-x) / cos_half,
            pts,
        ),
    ]
    z = se_forward_complex(zeta)
    ct = cd_scale * (1.0 + 1.0 / np.cos(0.5 * d))
    lg = np.log1p(ct)
    pts = {"x": x, "y": y, "d": d}
    e = np.abs(_inv_one_plus_exp(zeta))
    one_minus = np.abs(_inv_one_plus_exp(-zeta))
    out.append(_record("SE sup |e^{-z}| <= 1/cos(d/2)", e, ct - 1.0, pts))
    out.append(_record("SE sup |1-e^{-z}| <= 1/cos(d/2)", one_minus, ct - 1.0, pts))
    out.append(
        _record(
            "SE |1-e^{-z}| <= K~ |z/(1+z)|",
            one_minus,
            (1.0 + lg) / lg * ct * np.abs(z / (1.0 + z)),
            pts,
        )
    )
    return out


def _q_tilde(x):
    return x / arsinh(x)


def _p_tilde(x):
    return arsinh(x) / x * np.sqrt(1.0 + x * x)


def _w(x):
    with np.errstate(over="ignore", under="ignore"):
        return (1.0 + x * x) * np.exp(-2.0 * math.pi * x * (1.0 - 1.0 / arsinh(x)))


def _check_monotone(count):
    grid = np.logspace(-6.0, 3.0, max(count, 0))
    return [
        _monotone("q~(x) = x/arsinh x nondecreasing", _q_tilde, grid, increasing=True),
        _monotone("w(x) nonincreasing", _w, grid, increasing=False),
        _monotone("p~(x) = arsinh(x)/x sqrt(1+x^2) nondecreasing", _p_tilde, grid, increasing=True),
    ]


def verify_lemmas(seed=0, samples=10_000, cd_scale=1.0):
    """Check every inequality at ``samples`` pseudo-random points.

    Args:
        seed: seed for :func:`numpy.random.default_rng`.
        samples: points per check; 0 gives a vacuous pass.
        cd_scale: multiplies ``c_d`` and ``c~_d`` (and the ``1/cos`` bounds
            derived from them).  Values below 1 are a negative control that
            must produce violations.

    Returns:
        A :class:`LemmaReport`.
    """
    samples = int(samples)
    if samples < 0:
        raise ValueError("samples must be nonnegative")
    rng = np.random.default_rng(seed)
    checks = [_check_sinc(rng, samples)]
    checks += _check_lebesgue(rng, samples)
    checks.append(_check_log_strip(rng, samples))
    checks += _check_de_reciprocal(rng, samples, cd_scale)
    checks += _check_se_reciprocal(rng, samples, cd_scale)
    checks += _check_monotone(samples)
    return LemmaReport(seed=seed, samples=samples, checks=checks)
