import math
import threading

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from oracles import si_quad
from sincivp.errors import DomainError
from sincivp.specfun import (
    EULER_GAMMA,
    arsinh,
    log1p_exp,
    si_pi_multiples,
    sine_integral,
    stable_sigmoid,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


class TestSineIntegral:
    def test_zero(self):
        assert sine_integral(0.0) == 0.0

    def test_pi_against_quadrature(self, mp_dps):
        ref = float(si_quad(mpmath.pi))
        assert abs(sine_integral(math.pi) - ref) <= 1e-14
        assert abs(sine_integral(-math.pi) + ref) <= 1e-14
        assert sine_integral(math.pi) == pytest.approx(1.851937051982, abs=1e-12)

    def test_hundred(self, mp_dps):
        assert abs(sine_integral(100.0) - float(si_quad(100))) <= 1e-14
        assert sine_integral(100.0) == pytest.approx(1.562225466, abs=1e-9)

    @pytest.mark.parametrize("x", [0.1, 1.0, 3.9, 4.0, 4.1, 7.5, 20.0, 55.5, 400.0])
    def test_regime_boundaries(self, x, mp_dps):
        assert abs(sine_integral(x) - float(si_quad(x))) <= 1e-14

    def test_matches_scipy(self):
        x = np.linspace(-300, 300, 6001)
        assert np.max(np.abs(sine_integral(x) - scipy.special.sici(x)[0])) <= 1e-14

    @given(finite)
    def test_odd_and_bounded(self, x):
        assert sine_integral(-x) == -sine_integral(x)
        assert abs(sine_integral(x)) <= math.pi / 2 + 0.3

    def test_monotone_on_zero_pi(self):
        v = sine_integral(np.linspace(0, math.pi, 10_001))
        assert np.all(np.diff(v) >= 0)

    def test_tail_bound(self):
        x = np.linspace(10, 1e4, 20_000)
        assert np.all(np.abs(sine_integral(x) - math.pi / 2) <= 2 / x)

    @pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
    def test_rejects_nonfinite(self, bad):
        with pytest.raises(DomainError):
            sine_integral(bad)

    def test_scalar_and_array_shapes(self):
        assert isinstance(sine_integral(1.0), float)
        assert sine_integral(np.ones((2, 3))).shape == (2, 3)


class TestSiCache:
    def test_values(self):
        si = si_pi_multiples(50)
        k = np.arange(51)
        assert np.max(np.abs(si - sine_integral(math.pi * k))) == 0.0

    def test_read_only_and_growth(self):
        small = si_pi_multiples(3)
        big = si_pi_multiples(200)
        assert big.shape == (201,)
        np.testing.assert_array_equal(small, big[:4])
        with pytest.raises(ValueError):
            big[0] = 1.0

    def test_concurrent_readers(self):
        out = []

        def worker(k):
            out.append(si_pi_multiples(k)[k])

        threads = [threading.Thread(target=worker, args=(k,)) for k in range(300, 340)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(out) == sorted(sine_integral(math.pi * np.arange(300, 340)))


class TestArsinh:
    def test_examples(self, mp_dps):
        assert arsinh(0.0) == 0.0
        ref = float(mpmath.asinh(10))
        assert arsinh(10.0) == pytest.approx(ref, rel=1e-15)
        assert arsinh(-10.0) == -arsinh(10.0)
        assert arsinh(10.0) == pytest.approx(2.998222950, abs=1e-9)

    @given(st.floats(min_value=-1e300, max_value=1e300, allow_nan=False))
    def test_against_mpmath(self, x):
        ref = float(mpmath.asinh(mpmath.mpf(x)))
        assert arsinh(x) == pytest.approx(ref, rel=4e-16, abs=1e-300)

    def test_tiny_negative_no_cancellation(self):
        assert arsinh(-1e-20) == -1e-20

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            arsinh(math.inf)


class TestSigmoid:
    def test_examples(self):
        assert stable_sigmoid(0.0) == 0.5
        assert stable_sigmoid(math.inf) == 1.0
        assert stable_sigmoid(-math.inf) == 0.0
        with np.errstate(over="raise"):
            assert stable_sigmoid(1000.0) == 1.0

    def test_monotone(self):
        u = np.linspace(-1e6, 1e6, 100_000)
        assert np.all(np.diff(stable_sigmoid(u)) >= 0)

    @given(st.floats(min_value=-800, max_value=800))
    def test_complement(self, u):
        assert abs(stable_sigmoid(u) + stable_sigmoid(-u) - 1.0) <= np.spacing(1.0)


class TestLog1pExp:
    def test_examples(self):
        assert log1p_exp(0.0) == pytest.approx(math.log(2), rel=1e-16)
        assert log1p_exp(1000.0) == 1000.0
        assert 0.0 <= log1p_exp(-1000.0) <= 1e-300

    @given(st.floats(min_value=-30, max_value=30))
    def test_antisymmetry(self, u):
        diff = log1p_exp(u) - log1p_exp(-u)
        assert abs(diff - u) <= 4 * np.spacing(max(abs(u), log1p_exp(abs(u))))

    @given(st.floats(min_value=-700, max_value=700))
    def test_against_mpmath(self, u):
        ref = float(mpmath.log1p(mpmath.exp(mpmath.mpf(u))))
        assert log1p_exp(u) == pytest.approx(ref, rel=4e-16)


def test_euler_gamma_literal():
    assert EULER_GAMMA == 0.5772156649015329
    assert EULER_GAMMA == pytest.approx(float(mpmath.euler), rel=1e-16)
