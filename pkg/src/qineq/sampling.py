"""Time-domain sampling functions and their Fourier transforms.

Every sampler is a non-negative weight with unit integral.  Transforms use the
convention ``s_hat(omega) = int s(t) exp(-i omega t) dt``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TwoSidedExponential",
    "Lorentzian",
    "Gaussian",
    "SamplingFunction",
    "sampler_eval",
    "sampler_transform",
    "sampler_transform_real",
]


def _require_positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class TwoSidedExponential:
    """``A exp(lambda1 t)`` for ``t < 0`` and ``A exp(-lambda2 t)`` for ``t >= 0``.

    The amplitude ``A = lambda1 lambda2 / (lambda1 + lambda2)`` is derived,
    never stored.
    """

    lambda1: float
    lambda2: float

    def __post_init__(self):
        _require_positive("lambda1", self.lambda1)
        _require_positive("lambda2", self.lambda2)

    @property
    def amplitude(self) -> float:
        return self.lambda1 * self.lambda2 / (self.lambda1 + self.lambda2)

    # The density has a kink at t = 0; time-domain quadrature must split there.
    kinks = (0.0,)

    def pdf(self, t):
        t = np.asarray(t, dtype=float)
        left = np.exp(self.lambda1 * np.minimum(t, 0.0))
        right = np.exp(-self.lambda2 * np.maximum(t, 0.0))
        return self.amplitude * np.where(t < 0, left, right)

    def transform(self, omega):
        omega = np.asarray(omega, dtype=float)
        l1, l2, amp = self.lambda1, self.lambda2, self.amplitude
        d1 = l1 * l1 + omega * omega
        d2 = l2 * l2 + omega * omega
        re = amp * (l1 / d1 + l2 / d2)
        # omega/d1 - omega/d2 combined over a common denominator to avoid cancellation
        im = amp * omega * (l2 * l2 - l1 * l1) / (d1 * d2)
        return re + 1j * im

    def transform_real(self, omega):
        omega = np.asarray(omega, dtype=float)
        l1, l2 = self.lambda1, self.lambda2
        w2 = omega * omega
        return self.amplitude * (l1 / (l1 * l1 + w2) + l2 / (l2 * l2 + w2))

    def tail_mass(self, window):
        """Mass of the sampler outside ``[-window, window]``."""
        l1, l2 = self.lambda1, self.lambda2
        return self.amplitude * (math.exp(-l1 * window) / l1 + math.exp(-l2 * window) / l2)


@dataclass(frozen=True)
class Lorentzian:
    """``t0 / (pi (t^2 + t0^2))``."""

    t0: float

    def __post_init__(self):
        _require_positive("t0", self.t0)

    kinks = ()

    def pdf(self, t):
        t = np.asarray(t, dtype=float)
        return self.t0 / (math.pi * (t * t + self.t0 * self.t0))

    def transform(self, omega):
        return self.transform_real(omega) + 0j

    def transform_real(self, omega):
        return np.exp(-self.t0 * np.abs(np.asarray(omega, dtype=float)))

    def tail_mass(self, window):
        return 2.0 / math.pi * math.atan2(self.t0, window)


@dataclass(frozen=True)
class Gaussian:
    """Normal density with standard deviation ``tau`` (comparison sampler)."""

    tau: float

    def __post_init__(self):
        _require_positive("tau", self.tau)

    kinks = ()

    def pdf(self, t):
        t = np.asarray(t, dtype=float)
        return np.exp(-0.5 * (t / self.tau) ** 2) / (self.tau * math.sqrt(2.0 * math.pi))

    def transform(self, omega):
        return self.transform_real(omega) + 0j

    def transform_real(self, omega):
        omega = np.asarray(omega, dtype=float)
        return np.exp(-0.5 * (self.tau * omega) ** 2)

    def tail_mass(self, window):
        return math.erfc(window / (self.tau * math.sqrt(2.0)))


SamplingFunction = TwoSidedExponential | Lorentzian | Gaussian


def _scalar_or_array(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


def sampler_eval(s: SamplingFunction, t):
    """Value of the sampling density at time(s) ``t``."""
    return _scalar_or_array(s.pdf(t))


def sampler_transform(s: SamplingFunction, omega):
    """Complex transform ``int s(t) exp(-i omega t) dt``."""
    return _scalar_or_array(s.transform(omega))


def sampler_transform_real(s: SamplingFunction, omega):
    """Real part of :func:`sampler_transform`, computed directly."""
    return _scalar_or_array(s.transform_real(omega))
