import math

import numpy as np
import pytest
from scipy import integrate

from slitdiff.classical import (
    Kernel,
    NyquistError,
    ObliquityVariant,
    ObservationPoint,
    fraunhofer_amplitude,
    kirchhoff_amplitude,
    kirchhoff_pattern,
    nyquist_panels,
    obliquity_factor,
)
from slitdiff.core import AngleGrid, ApertureSpec, WaveSpec, peak_normalize
from slitdiff.huygens import huygens_closed_form
from slitdiff.marcella import momentum_amplitude, single_slit_probability

VARIANTS = list(ObliquityVariant)


def test_obliquity_examples():
    assert obliquity_factor("kirchhoff", 0.0, 0.0) == 1.0
    assert obliquity_factor("dirichlet", math.pi / 3, 0.0) == pytest.approx(0.5)
    assert obliquity_factor("neumann", 0.7, math.pi / 3) == pytest.approx(0.5)
    assert obliquity_factor("freshman", 1.2, 0.4) == 1.0
    assert obliquity_factor("kirchhoff", math.pi / 3, 0.0) == pytest.approx(0.75)
    for v in VARIANTS:
        assert obliquity_factor(v, 0.0, 0.0) == 1.0


def test_obliquity_rejects_grazing_angles():
    with pytest.raises(ValueError):
        obliquity_factor("dirichlet", math.pi / 2, 0.0)


def test_observation_point_validation():
    with pytest.raises(ValueError):
        ObservationPoint(0.0, 0.1)
    with pytest.raises(ValueError):
        ObservationPoint(1.0, -math.pi / 2)


def test_quadrature_matches_adaptive_oracle():
    # point source off axis, moderate k: integrate the kernel with scipy.quad
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec(k=2 * math.pi / 0.5, theta_incident=0.1, source_distance=30.0)
    L, theta = 50.0, 0.3
    k, R, tp = wave.k, 30.0, 0.1

    def integrand(y):
        r = math.hypot(L * math.cos(theta), L * math.sin(theta) - y)
        r0 = math.hypot(R * math.cos(tp), y + R * math.sin(tp))
        f = 0.5 * (L * math.cos(theta) / r + R * math.cos(tp) / r0)
        return np.exp(1j * k * (r + r0)) / (r * r0) * 2 * f

    re = integrate.quad(lambda y: integrand(y).real, -0.5, 0.5, epsabs=1e-15, limit=200)[0]
    im = integrate.quad(lambda y: integrand(y).imag, -0.5, 0.5, epsabs=1e-15, limit=200)[0]
    expected = -1j * k / (4 * math.pi) * complex(re, im)
    got = kirchhoff_amplitude(ap, wave, "kirchhoff", ObservationPoint(L, theta))
    assert abs(got - expected) < 1e-12 * abs(expected) + 1e-15


@pytest.mark.parametrize("variant", VARIANTS)
def test_peak_on_axis(variant):
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec.from_wavelength(0.1)
    grid = AngleGrid.symmetric(math.radians(20), 201)
    intensity = np.abs(kirchhoff_pattern(ap, wave, variant, 1e3, grid.thetas)) ** 2
    assert grid.thetas[np.argmax(intensity)] == 0.0


@pytest.mark.parametrize("variant", VARIANTS)
def test_agreement_regime_matches_sinc_squared(variant):
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec.from_wavelength(1 / 20)
    grid = AngleGrid.symmetric(math.radians(5), 401)
    kirch = peak_normalize(np.abs(kirchhoff_pattern(ap, wave, variant, 1e4, grid.thetas)) ** 2)
    sinc2 = peak_normalize(single_slit_probability(1.0, wave.k * grid.sin_theta))
    assert np.max(np.abs(kirch - sinc2)) < 0.02


def test_divergence_at_large_angle_and_long_wavelength():
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec.from_wavelength(1.0)
    grid = AngleGrid(np.array([0.0, math.radians(60)]))
    d = peak_normalize(np.abs(kirchhoff_pattern(ap, wave, "dirichlet", 1e4, grid.thetas)) ** 2)
    n = peak_normalize(np.abs(kirchhoff_pattern(ap, wave, "neumann", 1e4, grid.thetas)) ** 2)
    assert abs(d[1] - n[1]) / n[1] > 0.10


def test_nyquist_violation_names_minimum():
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec.from_wavelength(0.01)
    required = nyquist_panels(ap, wave, 1e4, [0.0, 0.1])
    assert required > 32
    with pytest.raises(NyquistError, match=str(required)) as info:
        kirchhoff_pattern(ap, wave, "dirichlet", 1e4, [0.0, 0.1], panels=required - 1)
    assert info.value.required == required


def test_nyquist_floor():
    assert nyquist_panels(ApertureSpec.single(1.0), WaveSpec.from_wavelength(10.0), 1e4, [0.0]) == 32


@pytest.mark.parametrize("variant", VARIANTS)
def test_mirror_symmetry(variant):
    ap = ApertureSpec.double(0.5, 2.0)
    wave = WaveSpec.from_wavelength(0.2)
    thetas = np.linspace(0.01, 1.2, 40)
    plus = np.abs(kirchhoff_pattern(ap, wave, variant, 30.0, thetas))
    minus = np.abs(kirchhoff_pattern(ap, wave, variant, 30.0, -thetas))
    np.testing.assert_allclose(minus, plus, rtol=1e-8, atol=0)


@pytest.mark.parametrize("variant", VARIANTS)
def test_self_convergence_above_nyquist(variant):
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec(k=2 * math.pi / 0.05, theta_incident=0.05, source_distance=500.0)
    thetas = np.linspace(-0.4, 0.4, 61)
    n = nyquist_panels(ap, wave, 200.0, thetas)
    a1 = np.abs(kirchhoff_pattern(ap, wave, variant, 200.0, thetas, panels=n))
    a2 = np.abs(kirchhoff_pattern(ap, wave, variant, 200.0, thetas, panels=2 * n))
    assert np.max(np.abs(a1 - a2) / a2) < 1e-6


def test_far_field_limit_monotone_in_distance():
    # freshman has no obliquity floor, so only the finite-distance error remains
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec.from_wavelength(0.05)
    grid = AngleGrid.symmetric(math.radians(5), 301)
    far = peak_normalize(np.abs(fraunhofer_amplitude(ap, wave.k, grid.thetas)) ** 2)
    devs = []
    for L in (1e2, 1e3, 1e4):
        near = peak_normalize(np.abs(kirchhoff_pattern(ap, wave, "freshman", L, grid.thetas)) ** 2)
        devs.append(np.max(np.abs(near - far)))
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-6


def test_freshman_far_field_is_huygens_closed_form():
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec.from_wavelength(0.25)
    grid = AngleGrid.symmetric(math.radians(40), 161)
    kirch = peak_normalize(np.abs(kirchhoff_pattern(ap, wave, "freshman", 1e6, grid.thetas)) ** 2)
    huyg = peak_normalize(huygens_closed_form(1.0, wave.k, grid.thetas) ** 2)
    assert np.max(np.abs(kirch - huyg)) < 1e-5


def test_distant_point_source_approaches_plane_wave():
    ap = ApertureSpec.single(1.0)
    thetas = np.linspace(-0.3, 0.3, 61)
    plane = WaveSpec(k=40.0, theta_incident=0.2)
    point = WaveSpec(k=40.0, theta_incident=0.2, source_distance=1e7)
    p = peak_normalize(np.abs(kirchhoff_pattern(ap, plane, "kirchhoff", 1e4, thetas)) ** 2)
    q = peak_normalize(np.abs(kirchhoff_pattern(ap, point, "kirchhoff", 1e4, thetas)) ** 2)
    assert np.max(np.abs(p - q)) < 1e-5


def test_cylindrical_kernel_same_far_field_shape():
    ap = ApertureSpec.single(1.0)
    wave = WaveSpec.from_wavelength(0.1)
    thetas = np.linspace(-0.2, 0.2, 81)
    s = peak_normalize(np.abs(kirchhoff_pattern(ap, wave, "dirichlet", 1e5, thetas)) ** 2)
    c = peak_normalize(np.abs(kirchhoff_pattern(ap, wave, "dirichlet", 1e5, thetas, kernel=Kernel.CYLINDRICAL)) ** 2)
    assert np.max(np.abs(s - c)) < 1e-4


def test_fraunhofer_on_axis():
    ap = ApertureSpec.double(0.5, 3.0)
    assert fraunhofer_amplitude(ap, 10.0, 0.0) == pytest.approx(math.sqrt(1.0 / (2 * math.pi)), abs=1e-16)


def test_fraunhofer_equals_momentum_amplitude():
    ap = ApertureSpec(((-1.0, 0.4), (0.7, 1.1)))
    k = 33.0
    thetas = AngleGrid.symmetric(1.4, 501).thetas
    np.testing.assert_allclose(
        fraunhofer_amplitude(ap, k, thetas), momentum_amplitude(ap, k * np.sin(thetas)), atol=1e-12, rtol=0
    )


def test_fraunhofer_first_zero():
    a, wavelength = 1.0, 0.2
    theta = math.asin(wavelength / a)
    amp = fraunhofer_amplitude(ApertureSpec.single(a), 2 * math.pi / wavelength, theta)
    assert abs(amp) < 1e-15
