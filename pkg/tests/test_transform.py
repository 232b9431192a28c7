import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sincivp.errors import DomainError
from sincivp.transform import (
    TransformKind,
    blend_argument,
    de_derivative,
    de_forward,
    de_forward_complex,
    de_inverse,
    derivative,
    forward,
    inverse,
    se_derivative,
    se_forward,
    se_forward_complex,
    se_inverse,
)

LOG2 = math.log(2.0)


def test_kind_parse():
    assert TransformKind.parse("se") is TransformKind.SE
    assert TransformKind.parse(TransformKind.DE) is TransformKind.DE
    with pytest.raises(DomainError):
        TransformKind.parse("tanh")


class TestSE:
    def test_forward_examples(self):
        assert se_forward(0.0) == pytest.approx(LOG2, rel=1e-16)
        assert abs(se_forward(50.0) - 50.0) <= math.exp(-50) + np.spacing(50.0)
        assert se_forward(-50.0) == pytest.approx(math.exp(-50), rel=1e-15)

    def test_derivative_examples(self):
        assert se_derivative(0.0) == 0.5
        assert se_derivative(math.inf) == 1.0
        assert se_derivative(-40.0) == pytest.approx(math.exp(-40), rel=1e-15)

    def test_inverse_examples(self):
        assert se_inverse(LOG2) == pytest.approx(0.0, abs=1e-16)
        assert se_inverse(0.0) == -math.inf
        assert se_inverse(math.inf) == math.inf
        # log(e^30 - 1) = 30 + log1p(-e^-30) sits about 26 ulps below 30.
        assert abs(se_inverse(30.0) - (30.0 - math.exp(-30.0))) <= np.spacing(30.0)

    def test_inverse_rejects_negative(self):
        with pytest.raises(DomainError):
            se_inverse(-1e-300)

    @given(st.floats(min_value=-30, max_value=30))
    def test_round_trip(self, x):
        assert se_inverse(se_forward(x)) == pytest.approx(x, rel=1e-12, abs=1e-12)

    @given(st.floats(min_value=1e-300, max_value=1e300))
    def test_forward_of_inverse(self, t):
        assert se_forward(se_inverse(t)) == pytest.approx(t, rel=4 * 2.0**-52)


class TestDE:
    def test_examples(self):
        assert de_forward(0.0) == pytest.approx(LOG2, rel=1e-16)
        assert de_derivative(0.0) == pytest.approx(math.pi / 2, rel=1e-16)
        assert de_inverse(LOG2) == pytest.approx(0.0, abs=1e-16)
        assert de_inverse(0.0) == -math.inf
        assert de_inverse(math.inf) == math.inf

    def test_inverse_rejects_negative(self):
        with pytest.raises(DomainError):
            de_inverse(-1.0)

    @given(st.floats(min_value=-30, max_value=30))
    def test_round_trip(self, x):
        t = de_forward(x)
        if 0 < t < math.inf:
            assert de_inverse(t) == pytest.approx(x, rel=1e-12, abs=1e-12)

    @given(st.floats(min_value=-6, max_value=6))
    def test_against_mpmath(self, x):
        with mpmath.workdps(40):
            xm = mpmath.mpf(x)
            u = mpmath.pi * mpmath.sinh(xm)
            t = mpmath.log1p(mpmath.exp(u))
            dt = mpmath.pi * mpmath.cosh(xm) / (1 + mpmath.exp(-u))
        # The relative condition number of exp(pi sinh x) in x is |pi x cosh x|.
        rel = 8 * 2.0**-52 * (1 + math.pi * abs(x) * math.cosh(x))
        assert de_forward(x) == pytest.approx(float(t), rel=rel, abs=1e-300)
        assert de_derivative(x) == pytest.approx(float(dt), rel=rel, abs=1e-300)

    def test_no_overflow_far_out(self):
        x = np.array([-400.0, -20.0, 20.0, 400.0])
        with np.errstate(over="raise", invalid="raise", divide="raise"):
            d = de_derivative(x)
        assert d[0] == 0.0
        assert not np.any(np.isnan(d))
        assert np.all(np.isfinite(de_forward(np.array([-20.0, 20.0]))))


@pytest.mark.parametrize("kind", list(TransformKind))
def test_strictly_increasing(kind):
    x = np.linspace(-5, 5, 10_001)
    assert np.all(np.diff(forward(kind, x)) > 0)
    assert np.all(forward(kind, x) > 0)


@pytest.mark.parametrize("kind", list(TransformKind))
def test_dispatch_matches_direct(kind):
    x = np.linspace(-3, 3, 13)
    direct = {TransformKind.SE: (se_forward, se_derivative), TransformKind.DE: (de_forward, de_derivative)}
    f, df = direct[kind]
    np.testing.assert_array_equal(forward(kind, x), f(x))
    np.testing.assert_array_equal(derivative(kind, x), df(x))
    np.testing.assert_allclose(inverse(kind, f(x)), x, atol=1e-14)


def test_blend_argument():
    x = np.array([-1.0, 0.0, 2.0])
    np.testing.assert_array_equal(blend_argument(TransformKind.SE, x), x)
    np.testing.assert_allclose(blend_argument(TransformKind.DE, x), math.pi * np.sinh(x))


class TestComplex:
    def test_real_axis_agreement(self):
        x = np.linspace(-5, 5, 101)
        np.testing.assert_allclose(se_forward_complex(x + 0j).real, se_forward(x), rtol=1e-15)
        np.testing.assert_allclose(de_forward_complex(x + 0j).real, de_forward(x), rtol=1e-13)
        assert se_forward_complex(0j) == pytest.approx(LOG2)
        assert de_forward_complex(1e-12j) == pytest.approx(LOG2, abs=1e-11)

    def test_se_against_mpmath(self):
        z = 1 + 0.5j
        with mpmath.workdps(40):
            ref = complex(mpmath.log(1 + mpmath.exp(mpmath.mpc(1, 0.5))))
        assert abs(se_forward_complex(z) - ref) <= 1e-15 * abs(ref)

    @given(
        st.floats(min_value=-5, max_value=5),
        st.floats(min_value=-0.999, max_value=0.999),
    )
    def test_de_analytic_continuation(self, x, s):
        y = s * math.pi / 2
        got = de_forward_complex(complex(x, y))
        with mpmath.workdps(120):
            zeta = mpmath.mpc(x, y)
            w = mpmath.pi * mpmath.sinh(zeta)
            ref = mpmath.log(1 + mpmath.exp(w))
            slope = abs(mpmath.pi * mpmath.cosh(zeta) / (1 + mpmath.exp(-w)))
        # The continuation may differ from the principal logarithm by 2 pi i k.
        k = round((got - complex(ref)).imag / (2 * math.pi))
        ref = complex(ref + 2j * mpmath.pi * k)
        # Allow for the conditioning of the map near the strip edge.
        tol = 256 * 2.0**-52 * (abs(ref) + abs(complex(x, y)) * float(slope))
        assert abs(got - ref) <= tol

    def test_de_tiny_values_keep_relative_accuracy(self):
        z = de_forward_complex(-4.5 + 0.4j)
        with mpmath.workdps(120):
            ref = complex(mpmath.log(1 + mpmath.exp(mpmath.pi * mpmath.sinh(mpmath.mpc(-4.5, 0.4)))))
        assert abs(z - ref) <= 1e-13 * abs(ref)

    def test_strip_violation(self):
        with pytest.raises(DomainError):
            se_forward_complex(1 + 3.2j)
        with pytest.raises(DomainError):
            de_forward_complex(0.3 + 1.6j)
