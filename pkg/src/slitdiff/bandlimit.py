"""Band-limited round trip of the slit wavefunction.

Transforming the centered top-hat ``psi(y) = 1/sqrt(a)`` to momentum space,
keeping only ``|k| <= k_m``, and transforming back gives

    psi'(y) = 1/(pi sqrt(a)) * integral_{-a/2}^{a/2} sin(k_m (y - y')) / (y - y') dy'
            = 1/(pi sqrt(a)) * [Si(k_m (y + a/2)) - Si(k_m (y - a/2))].

For finite ``k_m`` the flat top is never recovered: the edges ring (Gibbs)
and the interior is smoothed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ArrayLike
from .marcella import sinc
from .quadrature import DEFAULT_ORDER, composite_gauss_legendre, panels_for_oscillation
from .special import sine_integral


@dataclass(frozen=True)
class BandlimitConfig:
    a: float
    k_m: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("slit width must be positive")
        if not self.k_m > 0:
            raise ValueError("band limit must be positive")

    @classmethod
    def from_wavelength(cls, a: float, wavelength: float) -> "BandlimitConfig":
        """Band limit ``k_m = 2 pi / wavelength``, the largest reachable ``k_y``."""
        return cls(a, 2 * math.pi / wavelength)

    @property
    def height(self) -> float:
        return 1.0 / math.sqrt(self.a)


@dataclass(frozen=True, eq=False)
class ReconstructionProfile:
    ys: np.ndarray
    values: np.ndarray
    deviation: np.ndarray  # values minus the top-hat


def top_hat(cfg: BandlimitConfig, y: ArrayLike) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    return np.where(np.abs(y) <= 0.5 * cfg.a, cfg.height, 0.0)


def bandlimited_reconstruct(cfg: BandlimitConfig, y: ArrayLike) -> np.ndarray:
    """Reconstructed wavefunction at ``y`` through the sine integral."""
    y = np.asarray(y, dtype=float)
    half = 0.5 * cfg.a
    diff = sine_integral(cfg.k_m * (y + half)) - sine_integral(cfg.k_m * (y - half))
    return diff / (math.pi * math.sqrt(cfg.a))


def bandlimited_reconstruct_quadrature(
    cfg: BandlimitConfig, y: ArrayLike, panels: int | None = None, order: int = DEFAULT_ORDER
) -> np.ndarray:
    """Same quantity by direct quadrature of the ``sin(k_m u)/u`` kernel.

    Independent of the sine-integral code path; used as its oracle.
    """
    y = np.asarray(y, dtype=float)
    if panels is None:
        panels = panels_for_oscillation(cfg.k_m, cfg.a, minimum=32)
    yp, w = composite_gauss_legendre(-0.5 * cfg.a, 0.5 * cfg.a, panels, order)
    u = np.atleast_1d(y).ravel()[:, None] - yp[None, :]
    # sin(k_m u)/u = k_m sinc(k_m u), finite at u = 0
    kernel = cfg.k_m * sinc(cfg.k_m * u)
    vals = (kernel * w[None, :]).sum(axis=1) / (math.pi * math.sqrt(cfg.a))
    return vals.reshape(y.shape)


def reconstruction_profile(cfg: BandlimitConfig, ys: ArrayLike) -> ReconstructionProfile:
    """Reconstruction and its signed deviation from the top-hat on ``ys``.

    ``ys`` must reach at least ``-a`` and ``+a`` so that both edges and some
    of the exterior are visible.
    """
    ys = np.asarray(ys, dtype=float).ravel()
    if ys.size == 0 or ys.min() > -cfg.a or ys.max() < cfg.a:
        raise ValueError(f"profile grid must cover [-a, a] = [{-cfg.a}, {cfg.a}]")
    values = bandlimited_reconstruct(cfg, ys)
    return ReconstructionProfile(ys, values, values - top_hat(cfg, ys))


def smallarg_flatness_condition(cfg: BandlimitConfig) -> float:
    """Small-argument estimate of ``psi'(y) sqrt(a)``, i.e. ``k_m a / pi``.

    When ``k_m (y - y')`` is small across the slit, ``sin(k_m u)/u ~ k_m`` and
    the reconstruction is flat at ``k_m a / pi`` times the true height. This
    equals one only for ``k_m = pi / a``, a wavelength of twice the slit width.
    """
    return cfg.k_m * cfg.a / math.pi
