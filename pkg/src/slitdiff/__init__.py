"""Scalar slit diffraction: the momentum-space (Fourier) slit amplitude next to
Huygens, Kirchhoff, Dirichlet and Neumann integrals and the Fraunhofer limit."""

from .bandlimit import (
    BandlimitConfig,
    bandlimited_reconstruct,
    bandlimited_reconstruct_quadrature,
    reconstruction_profile,
    smallarg_flatness_condition,
)
from .classical import (
    Kernel,
    NyquistError,
    ObliquityVariant,
    ObservationPoint,
    fraunhofer_amplitude,
    kirchhoff_amplitude,
    kirchhoff_pattern,
    obliquity_factor,
)
from .core import (
    AngleGrid,
    ApertureError,
    ApertureSpec,
    ComparisonReport,
    GridMismatchError,
    Normalization,
    Pattern,
    WaveSpec,
    aperture_wavefunction,
    compare_patterns,
    total_probability,
)
from .huygens import HuygensConfig, huygens_closed_form, huygens_convergence, huygens_sum
from .marcella import (
    double_slit_probability,
    momentum_amplitude,
    momentum_amplitude_numeric,
    momentum_norm,
    single_slit_probability,
)
from .special import sine_integral

__version__ = "0.1.0"

__all__ = [
    "BandlimitConfig",
    "bandlimited_reconstruct",
    "bandlimited_reconstruct_quadrature",
    "reconstruction_profile",
    "smallarg_flatness_condition",
    "Kernel",
    "NyquistError",
    "ObliquityVariant",
    "ObservationPoint",
    "fraunhofer_amplitude",
    "kirchhoff_amplitude",
    "kirchhoff_pattern",
    "obliquity_factor",
    "AngleGrid",
    "ApertureError",
    "ApertureSpec",
    "ComparisonReport",
    "GridMismatchError",
    "Normalization",
    "Pattern",
    "WaveSpec",
    "aperture_wavefunction",
    "compare_patterns",
    "total_probability",
    "HuygensConfig",
    "huygens_closed_form",
    "huygens_convergence",
    "huygens_sum",
    "double_slit_probability",
    "momentum_amplitude",
    "momentum_amplitude_numeric",
    "momentum_norm",
    "single_slit_probability",
    "sine_integral",
]
