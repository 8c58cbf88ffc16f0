"""Momentum-space slit amplitudes.

The particle leaving the screen is described by the normalized top-hat
``psi(y)``; the probability of transverse momentum ``k_y`` is
``|<k_y|psi>|^2`` with

    <k_y|psi> = (2 pi)^(-1/2) * integral exp(-i k_y y) psi(y) dy.

For a piecewise-constant aperture the integral is a sum of sinc terms, one
per slit, each carrying the phase ``exp(-i k_y c)`` of its center ``c``.
"""

from __future__ import annotations

import math

import numpy as np

from .core import ApertureError, ApertureSpec, ArrayLike
from .quadrature import DEFAULT_ORDER, composite_gauss_legendre, panels_for_oscillation

_SINC_SERIES_CUTOFF = 1e-4


def sinc(x: ArrayLike) -> np.ndarray:
    """Unnormalized ``sin(x)/x`` with the removable point at 0 handled.

    Small arguments use the Taylor polynomial through ``x**6``.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    series = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    return np.where(small, series, np.sin(safe) / safe)


def momentum_amplitude(ap: ApertureSpec, k_y: ArrayLike) -> np.ndarray:
    """Closed-form ``<k_y|psi>`` for the aperture's normalized top-hat.

    Returns a complex scalar array for scalar input, otherwise an array of
    the same shape as ``k_y``.
    """
    k_y = np.asarray(k_y, dtype=float)
    norm = 1.0 / math.sqrt(2 * math.pi * ap.total_width)
    total = np.zeros(k_y.shape, dtype=complex)
    for center, width in ap.slits:
        total = total + width * sinc(0.5 * width * k_y) * np.exp(-1j * k_y * center)
    return norm * total


def single_slit_probability(a: float, k_y: ArrayLike) -> np.ndarray:
    """``(a / 2 pi) * (sin(alpha)/alpha)**2`` with ``alpha = a k_y / 2``."""
    if not a > 0:
        raise ApertureError(f"slit width must be positive, got {a!r}")
    alpha = 0.5 * a * np.asarray(k_y, dtype=float)
    return a / (2 * math.pi) * sinc(alpha) ** 2


def double_slit_probability(a: float, d: float, k_y: ArrayLike) -> np.ndarray:
    """Two slits of width ``a`` centered at ``+-d/2``.

    ``(a / pi) * cos(k_y d / 2)**2 * (sin(alpha)/alpha)**2``, which is the
    single-slit envelope times the two-source fringe term.
    """
    if not a > 0:
        raise ApertureError(f"slit width must be positive, got {a!r}")
    if not d > a:
        raise ApertureError(f"slits overlap: separation {d} must exceed width {a}")
    k_y = np.asarray(k_y, dtype=float)
    alpha = 0.5 * a * k_y
    return a / math.pi * np.cos(0.5 * d * k_y) ** 2 * sinc(alpha) ** 2


def momentum_amplitude_numeric(
    ap: ApertureSpec,
    k_y: ArrayLike,
    panels: int | None = None,
    order: int = DEFAULT_ORDER,
) -> np.ndarray:
    """Quadrature of the overlap integral, independent of the sinc closed form.

    Each slit is split into ``panels`` equal Gauss-Legendre panels of
    ``order`` nodes. With ``panels=None`` every slit gets at least ten
    panels per oscillation of ``exp(-i k_y y)`` (minimum 16).
    """
    k_y = np.asarray(k_y, dtype=float)
    flat = k_y.ravel()
    if panels is not None and panels < 2:
        raise ValueError(f"need at least 2 panels per slit, got {panels}")
    height = 1.0 / math.sqrt(ap.total_width)
    k_peak = float(np.max(np.abs(flat))) if flat.size else 0.0
    total = np.zeros(flat.shape, dtype=complex)
    for lo, hi in ap.edges:
        n = panels if panels is not None else panels_for_oscillation(k_peak, hi - lo, minimum=16)
        y, w = composite_gauss_legendre(lo, hi, n, order)
        total = total + np.exp(-1j * np.outer(flat, y)) @ (w * height)
    return (total / math.sqrt(2 * math.pi)).reshape(k_y.shape)


def _tail_mass(ap: ApertureSpec, k_cut: float) -> float:
    # For |k_y| -> inf, |<k_y|psi>|^2 -> (2 / (pi W k^2)) |sum_j sin(k w_j/2) e^{-i k c_j}|^2.
    # Distinct slit edges make the oscillating cross terms average out, leaving
    # a mean of n_slits / (pi W k^2). Both tails together carry 2 n / (pi W K).
    n = len(ap.slits)
    return 2.0 * n / (math.pi * ap.total_width * k_cut)


def momentum_tail_bound(ap: ApertureSpec, k_cut: float) -> float:
    """Worst-case probability outside ``|k_y| > k_cut``.

    Uses ``|sum_j sin(.)e^(.)| <= n`` on the asymptotic form.
    """
    n = len(ap.slits)
    return 4.0 * n * n / (math.pi * ap.total_width * k_cut)


def momentum_norm(ap: ApertureSpec, k_cut: float | None = None, per_period: int = 10) -> float:
    """Integral of ``|<k_y|psi>|^2`` over all ``k_y``.

    The finite window ``|k_y| <= k_cut`` is integrated by composite
    Gauss-Legendre quadrature; the two slowly decaying tails are added from
    their analytic mean. ``k_cut`` defaults to ``2000 pi / narrowest width``,
    a whole number of sinc periods for the narrowest slit.
    """
    if k_cut is None:
        k_cut = 2000 * math.pi / min(w for _, w in ap.slits)
    edges = ap.edges
    span = float(edges.max() - edges.min())
    # |amplitude|^2 oscillates at frequencies up to the full aperture span
    panels = panels_for_oscillation(span, 2 * k_cut, per_period=per_period, minimum=64)
    nodes, weights = composite_gauss_legendre(-k_cut, k_cut, panels)
    chunk = 1 << 16
    parts = []
    for start in range(0, nodes.size, chunk):
        sl = slice(start, start + chunk)
        parts.append(np.dot(weights[sl], np.abs(momentum_amplitude(ap, nodes[sl])) ** 2))
    return math.fsum(parts) + _tail_mass(ap, k_cut)
