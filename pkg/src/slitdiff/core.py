"""Domain types shared by every diffraction method.

Conventions
-----------
* hbar = 1, so the transverse momentum of a scattered particle is the
  transverse wavenumber ``k_y = k sin(theta)``.
* The screen lies in the plane ``x = 0``; slits are intervals along ``y``.
* Angles are in radians and measured from the screen normal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray, Sequence[float]]


class ApertureError(ValueError):
    """Invalid slit geometry (empty, non-positive width, overlapping slits)."""


class GridMismatchError(ValueError):
    """Two patterns were sampled on different angle grids."""


class Normalization(str, enum.Enum):
    RAW = "raw"
    PEAK = "peak"
    PROBABILITY = "probability"


@dataclass(frozen=True)
class ApertureSpec:
    """One or more disjoint slits in an opaque plane screen.

    Parameters
    ----------
    slits : sequence of (center, width)
        Slit centers and widths, in the same length unit as the wavelength.
    """

    slits: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        slits = tuple((float(c), float(w)) for c, w in self.slits)
        if not slits:
            raise ApertureError("aperture needs at least one slit")
        for c, w in slits:
            if not (w > 0 and math.isfinite(w)):
                raise ApertureError(f"slit width must be positive, got {w!r}")
            if not math.isfinite(c):
                raise ApertureError(f"slit center must be finite, got {c!r}")
        ordered = sorted(slits)
        for (c0, w0), (c1, w1) in zip(ordered, ordered[1:]):
            # closed intervals, so touching edges count as overlap
            if c0 + w0 / 2 >= c1 - w1 / 2:
                raise ApertureError(
                    f"slits at {c0} (width {w0}) and {c1} (width {w1}) overlap"
                )
        object.__setattr__(self, "slits", slits)

    @classmethod
    def single(cls, width: float, center: float = 0.0) -> "ApertureSpec":
        return cls(((center, width),))

    @classmethod
    def double(cls, width: float, separation: float) -> "ApertureSpec":
        """Two equal slits with centers at ``+-separation/2``."""
        if not separation > width:
            raise ApertureError(
                f"separation {separation} must exceed slit width {width}"
            )
        return cls(((-separation / 2, width), (separation / 2, width)))

    @property
    def total_width(self) -> float:
        return math.fsum(w for _, w in self.slits)

    @property
    def edges(self) -> np.ndarray:
        """(n_slits, 2) array of lower and upper slit edges."""
        return np.array([(c - w / 2, c + w / 2) for c, w in self.slits])

    def is_symmetric(self) -> bool:
        mirrored = sorted((-c, w) for c, w in self.slits)
        return mirrored == sorted(self.slits)

    def shifted(self, delta: float) -> "ApertureSpec":
        return ApertureSpec(tuple((c + delta, w) for c, w in self.slits))


@dataclass(frozen=True)
class WaveSpec:
    """Monochromatic illumination.

    ``source_distance=None`` means plane-wave incidence along the direction
    ``theta_incident``.
    """

    k: float
    theta_incident: float = 0.0
    source_distance: Optional[float] = None

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError(f"wavenumber must be positive, got {self.k!r}")
        if not abs(self.theta_incident) < math.pi / 2:
            raise ValueError("incidence angle must lie in (-pi/2, pi/2)")
        if self.source_distance is not None and not self.source_distance > 0:
            raise ValueError("source distance must be positive")

    @classmethod
    def from_wavelength(cls, wavelength: float, **kwargs) -> "WaveSpec":
        if not wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {wavelength!r}")
        return cls(k=2 * math.pi / wavelength, **kwargs)

    @property
    def wavelength(self) -> float:
        return 2 * math.pi / self.k

    @property
    def is_plane_wave(self) -> bool:
        return self.source_distance is None


@dataclass(frozen=True, eq=False)
class AngleGrid:
    """Strictly increasing scattering angles inside (-pi/2, pi/2)."""

    thetas: np.ndarray

    def __post_init__(self):
        thetas = np.array(self.thetas, dtype=float).ravel()
        if thetas.size == 0:
            raise ValueError("angle grid is empty")
        if not np.all(np.isfinite(thetas)):
            raise ValueError("angle grid contains non-finite values")
        if np.any(np.abs(thetas) >= np.pi / 2):
            raise ValueError("all angles must satisfy |theta| < pi/2")
        if np.any(np.diff(thetas) <= 0):
            raise ValueError("angle grid must be strictly increasing")
        thetas.setflags(write=False)
        object.__setattr__(self, "thetas", thetas)

    @classmethod
    def symmetric(cls, theta_max: float, samples: int) -> "AngleGrid":
        """``samples`` evenly spaced angles on ``[-theta_max, theta_max]``."""
        if samples < 2:
            raise ValueError("need at least two samples")
        thetas = np.linspace(-theta_max, theta_max, samples)
        if samples % 2:
            thetas[samples // 2] = 0.0
        return cls(thetas)

    def __len__(self) -> int:
        return self.thetas.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, AngleGrid):
            return NotImplemented
        return np.array_equal(self.thetas, other.thetas)

    __hash__ = None

    @property
    def sin_theta(self) -> np.ndarray:
        return np.sin(self.thetas)

    @property
    def theta_max(self) -> float:
        return float(np.max(np.abs(self.thetas)))


def peak_normalize(intensity: np.ndarray) -> np.ndarray:
    """Scale so that exactly one sample, the first maximum, equals 1.0.

    Later samples that would tie with the maximum are nudged one ulp below 1.
    """
    intensity = np.asarray(intensity, dtype=float)
    peak = np.max(intensity)
    if not peak > 0:
        raise ValueError("cannot peak-normalize an identically zero pattern")
    out = intensity / peak
    out[out >= 1.0] = np.nextafter(1.0, 0.0)
    out[int(np.argmax(intensity))] = 1.0
    return out


@dataclass(frozen=True, eq=False)
class Pattern:
    """Complex amplitude and intensity of one method over an angle grid.

    ``amplitudes`` are always the method's raw values; only ``intensities``
    carry the chosen normalization. ``k`` is kept so that the momentum
    coordinate ``k sin(theta)`` can be reported and used for probability
    normalization.
    """

    method: str
    grid: AngleGrid
    amplitudes: np.ndarray
    intensities: np.ndarray
    normalization: Normalization = Normalization.RAW
    k: float = float("nan")

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        ints = np.asarray(self.intensities, dtype=float).ravel()
        n = len(self.grid)
        if amps.size != n or ints.size != n:
            raise ValueError(
                f"pattern has {amps.size} amplitudes and {ints.size} intensities "
                f"for a grid of {n} angles"
            )
        if np.any(ints < 0):
            raise ValueError("intensities must be non-negative")
        amps.setflags(write=False)
        ints.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "intensities", ints)
        object.__setattr__(self, "normalization", Normalization(self.normalization))

    @classmethod
    def from_amplitudes(
        cls,
        method: str,
        grid: AngleGrid,
        amplitudes: np.ndarray,
        normalization: Union[Normalization, str] = Normalization.RAW,
        k: float = float("nan"),
    ) -> "Pattern":
        amplitudes = np.asarray(amplitudes, dtype=complex)
        intensity = np.abs(amplitudes) ** 2
        normalization = Normalization(normalization)
        if normalization is Normalization.PEAK:
            intensity = peak_normalize(intensity)
        elif normalization is Normalization.PROBABILITY:
            # sampled density over k_y integrates to one on this grid
            if not (k > 0):
                raise ValueError("probability normalization needs the wavenumber")
            mass = np.trapezoid(intensity, k * grid.sin_theta)
            if not mass > 0:
                raise ValueError("pattern carries no probability mass on this grid")
            intensity = intensity / mass
        return cls(method, grid, amplitudes, intensity, normalization, float(k))

    @property
    def k_y(self) -> np.ndarray:
        return self.k * self.grid.sin_theta

    def renormalized(self, normalization: Union[Normalization, str]) -> "Pattern":
        return Pattern.from_amplitudes(
            self.method, self.grid, self.amplitudes, normalization, self.k
        )


@dataclass(frozen=True)
class ComparisonReport:
    method_pair: Tuple[str, str]
    grid: AngleGrid = field(compare=False, repr=False)
    max_abs_deviation: float
    rms_deviation: float
    lambda_over_a: float
    theta_max: float


def aperture_wavefunction(ap: ApertureSpec, y: ArrayLike) -> np.ndarray:
    """Normalized top-hat amplitude ``1/sqrt(total_width)`` on the slit union.

    Slit edges belong to the slit. Works elementwise on arrays.
    """
    y = np.asarray(y, dtype=float)
    inside = np.zeros(y.shape, dtype=bool)
    for lo, hi in ap.edges:
        inside |= (y >= lo) & (y <= hi)
    return np.where(inside, 1.0 / math.sqrt(ap.total_width), 0.0)


def total_probability(ap: ApertureSpec) -> float:
    """Closed-form integral of ``|psi(y)|^2`` over the screen."""
    height = 1.0 / ap.total_width
    return math.fsum(w * height for _, w in ap.slits)


def compare_patterns(
    p1: Pattern, p2: Pattern, lambda_over_a: float = float("nan")
) -> ComparisonReport:
    """Peak-normalize both intensities and report max-abs and RMS deviation."""
    if p1.grid != p2.grid:
        raise GridMismatchError(
            f"patterns {p1.method!r} and {p2.method!r} use different angle grids"
        )
    diff = np.abs(peak_normalize(p1.intensities) - peak_normalize(p2.intensities))
    return ComparisonReport(
        method_pair=(p1.method, p2.method),
        grid=p1.grid,
        max_abs_deviation=float(np.max(diff)),
        rms_deviation=float(np.sqrt(np.mean(diff**2))),
        lambda_over_a=float(lambda_over_a),
        theta_max=p1.grid.theta_max,
    )
