"""Scalar diffraction integrals over a slit cross-section.

The Kirchhoff-type amplitude at an observation point P is evaluated as

    psi(P) = -(i k / 4 pi) * sum over slits of
             integral u_in(y) * K(r) * 2 f(theta_y, theta'_y) dy

with ``K(r) = exp(i k r) / r`` (spherical kernel, the default) and the
obliquity factor ``f`` chosen by the approximation:

=========  ===========================
freshman   1
kirchhoff  (cos theta + cos theta') / 2
dirichlet  cos theta
neumann    cos theta'
=========  ===========================

Local angles are recomputed from the exact geometry at every aperture
point. The overall constant is arbitrary, so comparisons use
peak-normalized intensities.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import AngleGrid, ApertureSpec, ArrayLike, Pattern, WaveSpec
from .marcella import sinc
from .quadrature import DEFAULT_ORDER, composite_gauss_legendre

MIN_PANELS = 32
PANELS_PER_PERIOD = 10
_CHUNK = 1 << 20


class NyquistError(ValueError):
    """Too few quadrature panels to resolve the kernel phase."""

    def __init__(self, requested: int, required: int):
        self.requested = requested
        self.required = required
        super().__init__(
            f"{requested} panels per slit is below the Nyquist bound; "
            f"at least {required} are required"
        )


class ObliquityVariant(str, enum.Enum):
    FRESHMAN = "freshman"
    KIRCHHOFF = "kirchhoff"
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class Kernel(str, enum.Enum):
    SPHERICAL = "spherical"
    CYLINDRICAL = "cylindrical"


@dataclass(frozen=True)
class ObservationPoint:
    distance: float
    angle: float

    def __post_init__(self):
        if not self.distance > 0:
            raise ValueError("observation distance must be positive")
        if not abs(self.angle) < math.pi / 2:
            raise ValueError("observation angle must lie in (-pi/2, pi/2)")


def _obliquity_cos(variant: ObliquityVariant, cos_t, cos_tp):
    if variant is ObliquityVariant.FRESHMAN:
        return np.ones(np.broadcast(cos_t, cos_tp).shape)
    if variant is ObliquityVariant.KIRCHHOFF:
        return 0.5 * (cos_t + cos_tp)
    if variant is ObliquityVariant.DIRICHLET:
        return cos_t * np.ones_like(cos_tp)
    return cos_tp * np.ones_like(cos_t)


def obliquity_factor(variant, theta: ArrayLike, theta_prime: ArrayLike) -> np.ndarray:
    """Angular weight of a secondary wavelet for the given approximation."""
    theta = np.asarray(theta, dtype=float)
    theta_prime = np.asarray(theta_prime, dtype=float)
    if np.any(np.abs(theta) >= np.pi / 2) or np.any(np.abs(theta_prime) >= np.pi / 2):
        raise ValueError("angles must lie in (-pi/2, pi/2)")
    return _obliquity_cos(ObliquityVariant(variant), np.cos(theta), np.cos(theta_prime))


def _incident_path(wave: WaveSpec, y: np.ndarray) -> np.ndarray:
    tp = wave.theta_incident
    if wave.is_plane_wave:
        return y * math.sin(tp)
    R = wave.source_distance
    return np.hypot(R * math.cos(tp), y + R * math.sin(tp))


def nyquist_panels(
    ap: ApertureSpec, wave: WaveSpec, distance: float, thetas: ArrayLike
) -> int:
    """Smallest panel count per slit accepted by :func:`kirchhoff_pattern`.

    Ten panels per oscillation of ``k * (width + path variation)``, where the
    path variation is the spread of ``r + r0`` across the widest-varying
    slit over all requested angles; never fewer than 32.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    required = MIN_PANELS
    for lo, hi in ap.edges:
        y = np.array([lo, 0.5 * (lo + hi), hi])
        x_obs = distance * np.cos(thetas)[:, None]
        y_obs = distance * np.sin(thetas)[:, None]
        path = np.hypot(x_obs, y_obs - y[None, :]) + _incident_path(wave, y)[None, :]
        variation = float(np.max(path.max(axis=1) - path.min(axis=1)))
        periods = wave.k * ((hi - lo) + variation) / (2 * math.pi)
        required = max(required, int(math.ceil(PANELS_PER_PERIOD * periods)))
    return required


def kirchhoff_pattern(
    ap: ApertureSpec,
    wave: WaveSpec,
    variant,
    distance: float,
    thetas: ArrayLike,
    panels: int | None = None,
    order: int = DEFAULT_ORDER,
    kernel=Kernel.SPHERICAL,
) -> np.ndarray:
    """Diffraction amplitude at ``distance`` for every angle in ``thetas``.

    Raises
    ------
    NyquistError
        If ``panels`` is below :func:`nyquist_panels` for this geometry.
    """
    variant = ObliquityVariant(variant)
    kernel = Kernel(kernel)
    if not distance > 0:
        raise ValueError("screen distance must be positive")
    thetas = np.asarray(thetas, dtype=float)
    flat = np.atleast_1d(thetas).ravel()
    if np.any(np.abs(flat) >= np.pi / 2):
        raise ValueError("observation angles must lie in (-pi/2, pi/2)")
    required = nyquist_panels(ap, wave, distance, flat)
    if panels is None:
        panels = required
    elif panels < required:
        raise NyquistError(panels, required)

    k = wave.k
    tp = wave.theta_incident
    nodes, weights = [], []
    for lo, hi in ap.edges:
        y, w = composite_gauss_legendre(lo, hi, panels, order)
        nodes.append(y)
        weights.append(w)
    y = np.concatenate(nodes)
    w = np.concatenate(weights)

    if wave.is_plane_wave:
        incident = np.exp(1j * k * y * math.sin(tp))
        cos_tp = np.full(y.shape, math.cos(tp))
    else:
        r0 = _incident_path(wave, y)
        incident = np.exp(1j * k * r0) / r0
        cos_tp = wave.source_distance * math.cos(tp) / r0
    weighted_in = w * incident

    out = np.empty(flat.shape, dtype=complex)
    step = max(1, _CHUNK // y.size)
    for start in range(0, flat.size, step):
        th = flat[start:start + step, None]
        x_obs = distance * np.cos(th)
        r = np.hypot(x_obs, distance * np.sin(th) - y[None, :])
        cos_t = x_obs / r
        if kernel is Kernel.SPHERICAL:
            prop = np.exp(1j * k * r) / r
        else:
            prop = np.exp(1j * k * r) / np.sqrt(r)
        f = _obliquity_cos(variant, cos_t, cos_tp[None, :])
        # numpy reduces the contiguous last axis pairwise: fixed order
        out[start:start + step] = np.sum(weighted_in[None, :] * prop * (2.0 * f), axis=1)
    out *= -1j * k / (4 * math.pi)
    return out.reshape(thetas.shape)


def kirchhoff_amplitude(
    ap: ApertureSpec,
    wave: WaveSpec,
    variant,
    obs: ObservationPoint,
    panels: int | None = None,
    order: int = DEFAULT_ORDER,
    kernel=Kernel.SPHERICAL,
) -> complex:
    """Amplitude at a single observation point; see :func:`kirchhoff_pattern`."""
    return complex(
        kirchhoff_pattern(ap, wave, variant, obs.distance, obs.angle, panels, order, kernel)
    )


def fraunhofer_amplitude(ap: ApertureSpec, k: float, theta: ArrayLike) -> np.ndarray:
    """Far-field slit integral ``C * integral exp(-i k sin(theta) y) dy``.

    ``C = 1 / sqrt(2 pi W)`` with ``W`` the total open width, which makes
    the result coincide with the momentum amplitude at ``k_y = k sin(theta)``.
    """
    if not k > 0:
        raise ValueError("wavenumber must be positive")
    q = k * np.sin(np.asarray(theta, dtype=float))
    c = 1.0 / math.sqrt(2 * math.pi * ap.total_width)
    total = np.zeros(q.shape, dtype=complex)
    for center, width in ap.slits:
        total = total + width * sinc(0.5 * width * q) * np.exp(-1j * q * center)
    return c * total


def kirchhoff_method_pattern(
    ap: ApertureSpec,
    wave: WaveSpec,
    variant,
    distance: float,
    grid: AngleGrid,
    normalization="raw",
    panels: int | None = None,
    kernel=Kernel.SPHERICAL,
) -> Pattern:
    variant = ObliquityVariant(variant)
    amps = kirchhoff_pattern(ap, wave, variant, distance, grid.thetas, panels, kernel=kernel)
    return Pattern.from_amplitudes(f"kirchhoff:{variant.value}", grid, amps, normalization, wave.k)


def fraunhofer_method_pattern(ap: ApertureSpec, k: float, grid: AngleGrid, normalization="raw") -> Pattern:
    return Pattern.from_amplitudes(
        "fraunhofer", grid, fraunhofer_amplitude(ap, k, grid.thetas), normalization, k
    )
