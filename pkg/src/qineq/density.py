"""Energy density of a squeezed massless scalar field at the spatial origin.

Natural units (hbar = c = 1); densities carry units of wavenumber**4.

Constant chain: the mode sum ``(1/2V) sum_k 2|k| [...]`` becomes, under
``sum_k -> V/(2 pi)^3 int 4 pi k^2 dk``, the radial integral
``(1/(2 pi^2)) int k^3 [...] dk``.  With ``f = -g`` (``g >= 0``) the bracket
at time t is ``sinh^2 g - cosh g sinh g cos(2kt)``.  Averaging over a sampler
replaces ``cos(2kt)`` by ``Re s_hat(2k)``.

Sign convention: everything below works with ``g >= 0``; the generator
coefficient ``f = -g`` only appears in the Fock-space oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SamplerMismatch, WindowTooSmall
from .quadrature import CosineTransform, QuadratureConfig, integrate, integrate_oscillatory
from .sampling import SamplingFunction, TwoSidedExponential
from .squeeze import BandProfile, SqueezeProfile, ZeroProfile, validate_profile

__all__ = [
    "PREFACTOR",
    "EnergyDensityModel",
    "DensityValue",
    "density_at",
    "density_trace",
    "positive_energy",
    "t00_average_exact",
    "t00_average_generic",
    "t00_average_timedomain",
    "t00_asymptotic",
]

PREFACTOR = 1.0 / (2.0 * math.pi**2)


@dataclass(frozen=True)
class DensityValue:
    value: float
    error_estimate: float

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be non-negative")


_VACUUM = DensityValue(0.0, 0.0)


@dataclass(frozen=True)
class EnergyDensityModel:
    profile: SqueezeProfile
    sampler: SamplingFunction
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        validate_profile(self.profile)

    @classmethod
    def tuned(cls, lambda1, lambda2, W, Lambda, quad=None):
        """Band profile tied to its own two-sided exponential sampler."""
        sampler = TwoSidedExponential(lambda1, lambda2)
        return cls(BandProfile(W, Lambda, sampler), sampler, quad or QuadratureConfig())

    @property
    def is_vacuum(self) -> bool:
        return isinstance(self.profile, ZeroProfile)

    def with_cutoff(self, Lambda):
        from dataclasses import replace

        return replace(self, profile=replace(self.profile, Lambda=Lambda))


def _hyperbolics(profile, k):
    """``(sinh^2 g, cosh g sinh g, tanh g)`` evaluated from ``tanh g``."""
    tau = profile.tanh_g(k)
    inv = 1.0 / (1.0 - tau * tau)
    return tau * tau * inv, tau * inv, tau


def _band(m: EnergyDensityModel):
    lo, hi = m.profile.support
    return lo, hi, m.quad.with_breakpoints(lo, hi)


def _radial(m, integrand):
    lo, hi, cfg = _band(m)
    r = integrate(lambda k: k**3 * integrand(k), lo, hi, cfg)
    return DensityValue(PREFACTOR * r.value, PREFACTOR * r.error_estimate)


def positive_energy(m: EnergyDensityModel) -> DensityValue:
    """Time-independent part ``(1/2pi^2) int k^3 sinh^2 g dk`` (always >= 0)."""
    if m.is_vacuum:
        return _VACUUM
    return _radial(m, lambda k: _hyperbolics(m.profile, k)[0])


def density_at(m: EnergyDensityModel, t: float) -> DensityValue:
    """Pointwise energy density at the origin at time ``t``."""
    if m.is_vacuum:
        return _VACUUM
    lo, hi, cfg = _band(m)
    steady = integrate(lambda k: k**3 * _hyperbolics(m.profile, k)[0], lo, hi, cfg)
    osc = integrate_oscillatory(lambda k: k**3 * _hyperbolics(m.profile, k)[1], 2.0 * t, lo, hi, cfg)
    return DensityValue(
        PREFACTOR * (steady.value - osc.value),
        PREFACTOR * (steady.error_estimate + osc.error_estimate),
    )


class _DensityTrace:
    """Density at many times through one Legendre-Filon expansion of the envelope."""

    def __init__(self, m: EnergyDensityModel):
        lo, hi, _ = _band(m)
        self.steady = positive_energy(m)
        self.transform = CosineTransform(lambda k: k**3 * _hyperbolics(m.profile, k)[1], lo, hi)
        # sup_t |density| <= steady + int |k^3 cosh g sinh g|
        self.bound = self.steady.value + PREFACTOR * float(
            np.sum(2 * self.transform.halfwidths * np.abs(self.transform.coeffs[:, 0]))
        )
        self.error = self.steady.error_estimate + PREFACTOR * self.transform.error_bound

    def __call__(self, t):
        return self.steady.value - PREFACTOR * self.transform(2.0 * np.asarray(t, dtype=float))


def density_trace(m: EnergyDensityModel, times):
    """Density at each of ``times``; returns ``(values, error_bound)``.

    Uses the batched cosine transform, so cost does not grow with ``|t|``.
    """
    times = np.asarray(times, dtype=float)
    if m.is_vacuum:
        return np.zeros_like(times), 0.0
    trace = _DensityTrace(m)
    return trace(times), trace.error


def _require_exponential(sampler):
    if not isinstance(sampler, TwoSidedExponential):
        raise SamplerMismatch(
            f"the closed-form average needs a TwoSidedExponential sampler, got {type(sampler).__name__}"
        )


def t00_average_exact(m: EnergyDensityModel) -> DensityValue:
    """Sampled average for the two-sided exponential, bracket written out in closed form.

    ``(1/2pi^2) int k^3 cosh g sinh g [tanh g - A(l1/(l1^2+4k^2) + l2/(l2^2+4k^2))] dk``
    """
    _require_exponential(m.sampler)
    if m.is_vacuum:
        return _VACUUM
    l1, l2, amp = m.sampler.lambda1, m.sampler.lambda2, m.sampler.amplitude

    def bracket(k):
        _, cs, tau = _hyperbolics(m.profile, k)
        k2 = 4.0 * k * k
        return cs * (tau - amp * (l1 / (l1 * l1 + k2) + l2 / (l2 * l2 + k2)))

    return _radial(m, bracket)


def t00_average_generic(m: EnergyDensityModel) -> DensityValue:
    """Sampled average for any sampler, through ``Re s_hat(2k)``."""
    if m.is_vacuum:
        return _VACUUM

    def bracket(k):
        _, cs, tau = _hyperbolics(m.profile, k)
        return cs * (tau - m.sampler.transform_real(2.0 * k))

    return _radial(m, bracket)


def t00_average_timedomain(m: EnergyDensityModel, window: float, period_fraction: float = 0.5) -> DensityValue:
    """Sampled average as a literal time integral over ``[-window, window]``.

    The integrand ``density(t) s(t)`` oscillates at frequencies up to
    ``2 Lambda``; time panels start no wider than ``period_fraction`` of that
    period and are split at the sampler's kinks.  The neglected tails are
    bounded by ``tail_mass(window) * sup|density|``; if that bound exceeds
    ``max(abs_tol, rel_tol * positive_energy)`` the window is rejected.
    """
    if m.is_vacuum:
        return _VACUUM
    if not window > 0:
        raise ValueError("window must be positive")
    trace = _DensityTrace(m)
    tail = m.sampler.tail_mass(window) * trace.bound
    tail_tol = max(m.quad.abs_tol, m.quad.rel_tol * trace.steady.value)
    if tail > tail_tol:
        raise WindowTooSmall(f"tails beyond |t| = {window} may carry {tail:.3e} > {tail_tol:.3e}")

    k_max = m.profile.support[1]
    cap = period_fraction * math.pi / k_max
    cuts = [-window] + [c for c in m.sampler.kinks if -window < c < window] + [window]
    # The time integral is a small remainder of large cancelling pieces; judge it absolutely.
    cfg = QuadratureConfig(m.quad.rel_tol, max(m.quad.abs_tol, m.quad.rel_tol * trace.steady.value),
                           m.quad.max_subdivisions)

    value = error = 0.0
    for lo, hi in zip(cuts, cuts[1:]):
        r = integrate(lambda t: m.sampler.pdf(t) * trace(t), lo, hi, cfg,
                      max_panel_width=cap, phase_rate=2.0 * k_max)
        value += r.value
        error += r.error_estimate
    # Filon error is uniform in t and the weights integrate to at most one.
    error += trace.error + tail
    return DensityValue(value, error)


def t00_asymptotic(lambda1, lambda2, W, Lambda) -> float:
    """Leading large-cutoff behaviour ``-(l1 l2)^2 / (128 pi^2) ln(Lambda/W)``."""
    if not (lambda1 > 0 and lambda2 > 0):
        raise ValueError("decay rates must be positive")
    if not (W > 0 and Lambda >= W):
        raise ValueError("need Lambda >= W > 0")
    return -((lambda1 * lambda2) ** 2) / (128.0 * math.pi**2) * math.log(Lambda / W)
