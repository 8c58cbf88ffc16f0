import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from slitdiff.special import SERIES_LIMIT, auxiliary_fg, sine_integral


def si_by_quadrature(x):
    value, _ = integrate.quad(lambda t: np.sinc(t / math.pi), 0.0, x, epsabs=1e-13, epsrel=1e-13, limit=500)
    return value


@pytest.mark.parametrize("x", [0.1, 1.0, math.pi / 2, 3.9, 4.0, 4.1, 7.5, 25.0, 80.0])
def test_against_adaptive_quadrature(x):
    assert sine_integral(x) == pytest.approx(si_by_quadrature(x), abs=1e-12)


@given(st.floats(-1e4, 1e4))
def test_against_mpmath(x):
    assert sine_integral(x) == pytest.approx(float(mpmath.si(x)), abs=1e-12)


def test_large_arguments_tend_to_half_pi():
    x = np.array([1e5, 1e7, 1e9])
    np.testing.assert_allclose(sine_integral(x), np.pi / 2, atol=2e-5)
    np.testing.assert_allclose(sine_integral(x), [float(mpmath.si(v)) for v in x], atol=1e-12)


def test_odd_and_zero():
    assert sine_integral(0.0) == 0.0
    xs = np.linspace(0, 30, 301)
    np.testing.assert_array_equal(sine_integral(-xs), -sine_integral(xs))


def test_regimes_meet_continuously():
    x = np.nextafter(SERIES_LIMIT, [0.0, 10.0])
    lo, hi = sine_integral(x)
    assert abs(hi - lo) < 1e-14


def test_auxiliary_asymptotics():
    f, g = auxiliary_fg(np.array([1e3]))
    assert f[0] == pytest.approx(1e-3, rel=1e-5)
    assert g[0] == pytest.approx(1e-6, rel=1e-5)


def test_known_value():
    # Si(pi) = 1.851937051982466..., the Gibbs constant
    assert sine_integral(math.pi) == pytest.approx(1.8519370519824662, abs=1e-15)
