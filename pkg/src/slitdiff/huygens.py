"""Discrete Huygens wavelet sum across a single slit and its continuum limit.

The slit is populated with 2N+1 equally spaced point sources (n = -N..N).
For parallel rays toward angle theta, source n has phase
``alpha_n sin(theta)`` with ``alpha_n = (k a / 2) n / N``. The sum, weighted
by the spacing ``d_alpha = k a / (2N)``, is a Riemann sum of

    integral_{-ka/2}^{ka/2} exp(i alpha sin(theta)) d alpha
        = 2 sin((k a / 2) sin(theta)) / sin(theta).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from .core import AngleGrid, ArrayLike, Pattern
from .marcella import sinc

_MAX_TERMS_PER_BLOCK = 1 << 20


@dataclass(frozen=True)
class HuygensConfig:
    a: float
    k: float
    N: int

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("slit width must be positive")
        if not self.k > 0:
            raise ValueError("wavenumber must be positive")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")

    @property
    def d_alpha(self) -> float:
        return self.k * self.a / (2 * self.N)

    def alphas(self) -> np.ndarray:
        n = np.arange(-self.N, self.N + 1)
        return (0.5 * self.k * self.a / self.N) * n


def huygens_sum(cfg: HuygensConfig, theta: ArrayLike) -> np.ndarray:
    """``sum_{n=-N}^{N} exp(i alpha_n sin(theta)) * d_alpha``.

    Terms are added with numpy's pairwise reduction in a fixed order, so the
    result does not depend on how the angle grid is blocked.
    """
    theta = np.asarray(theta, dtype=float)
    s = np.atleast_1d(np.sin(theta)).ravel()
    alphas = cfg.alphas()
    out = np.empty(s.shape, dtype=complex)
    step = max(1, _MAX_TERMS_PER_BLOCK // alphas.size)
    for start in range(0, s.size, step):
        phase = s[start:start + step, None] * alphas[None, :]
        out[start:start + step] = np.exp(1j * phase).sum(axis=1)
    return (out * cfg.d_alpha).reshape(theta.shape)


def huygens_closed_form(a: float, k: float, theta: ArrayLike) -> np.ndarray:
    """``2 sin((k a/2) sin(theta)) / sin(theta)``, equal to ``k a`` at theta = 0."""
    if not (a > 0 and k > 0):
        raise ValueError("slit width and wavenumber must be positive")
    s = np.sin(np.asarray(theta, dtype=float))
    half = 0.5 * k * a
    return 2 * half * sinc(half * s)


def huygens_convergence(
    a: float, k: float, Ns: Iterable[int], theta: float
) -> List[Tuple[int, float]]:
    """Relative error of the discrete sum against the closed form, per N.

    Raises
    ------
    ValueError
        If ``Ns`` is not strictly increasing, or the closed form vanishes at
        ``theta`` (relative error undefined there; pick another angle).
    """
    Ns = [int(n) for n in Ns]
    if not Ns:
        raise ValueError("need at least one N")
    if any(b <= a_ for a_, b in zip(Ns, Ns[1:])):
        raise ValueError("N values must be strictly increasing")
    exact = float(huygens_closed_form(a, k, theta))
    if abs(exact) <= 1e-12 * k * a:
        raise ValueError(
            f"closed form vanishes at theta={theta!r} (a diffraction zero); "
            "choose a different angle"
        )
    rows = []
    for n in Ns:
        approx = complex(huygens_sum(HuygensConfig(a, k, n), theta))
        rows.append((n, abs(approx - exact) / abs(exact)))
    return rows


def huygens_method_pattern(
    cfg: HuygensConfig, grid: AngleGrid, normalization="raw"
) -> Pattern:
    return Pattern.from_amplitudes(
        f"huygens:{cfg.N}", grid, huygens_sum(cfg, grid.thetas), normalization, cfg.k
    )
