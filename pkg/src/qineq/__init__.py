"""Sampled energy densities of squeezed vacuum states of a massless scalar field.

Computes weighted time averages of the energy density at the origin for
squeezed states whose per-mode squeeze is tuned to a sampling function, and
shows numerically that for the two-sided exponential sampler the average
falls without bound, logarithmically in the UV cutoff.
"""

__version__ = "0.1.0"

from .density import (
    DensityValue,
    EnergyDensityModel,
    density_at,
    density_trace,
    positive_energy,
    t00_asymptotic,
    t00_average_exact,
    t00_average_generic,
    t00_average_timedomain,
)
from .quadrature import QuadratureConfig, QuadratureResult, integrate, integrate_oscillatory
from .sampling import Gaussian, Lorentzian, TwoSidedExponential
from .squeeze import BandProfile, ConstantBand, ZeroProfile, squeeze_at, validate_profile
from .sweep import SweepReport, fit_log_slope, run_lambda_sweep

__all__ = [
    "BandProfile",
    "ConstantBand",
    "DensityValue",
    "EnergyDensityModel",
    "Gaussian",
    "Lorentzian",
    "QuadratureConfig",
    "QuadratureResult",
    "SweepReport",
    "TwoSidedExponential",
    "ZeroProfile",
    "density_at",
    "density_trace",
    "fit_log_slope",
    "integrate",
    "integrate_oscillatory",
    "positive_energy",
    "run_lambda_sweep",
    "squeeze_at",
    "t00_asymptotic",
    "t00_average_exact",
    "t00_average_generic",
    "t00_average_timedomain",
    "validate_profile",
]
