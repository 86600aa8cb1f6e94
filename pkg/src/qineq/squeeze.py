"""Per-mode squeeze profiles g(k) >= 0 (the generator coefficient is f = -g).

Banded profiles vanish outside ``[W, Lambda]`` and jump there, so any
integral over k must split panels at both cutoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ProfileInvalid
from .sampling import SamplingFunction, TwoSidedExponential

__all__ = [
    "ZeroProfile",
    "BandProfile",
    "ConstantBand",
    "SqueezeProfile",
    "squeeze_at",
    "validate_profile",
]


def _check_band(W, Lambda):
    for name, value in (("W", W), ("Lambda", Lambda)):
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise ProfileInvalid(f"{name} must be a positive finite wavenumber, got {value!r}")
    if not Lambda > W:
        raise ProfileInvalid(f"Lambda ({Lambda}) must exceed W ({W})")


@dataclass(frozen=True)
class ZeroProfile:
    """The unsqueezed vacuum."""

    support = None

    def tanh_g(self, k):
        return np.zeros_like(np.asarray(k, dtype=float))

    def g(self, k):
        return self.tanh_g(k)


@dataclass(frozen=True)
class BandProfile:
    """Squeezing tuned to a two-sided exponential sampler inside ``[W, Lambda]``.

    There ``tanh g(k) = (A/2) Re s_hat(2k)``; outside, ``g = 0``.
    """

    W: float
    Lambda: float
    sampler: TwoSidedExponential

    def __post_init__(self):
        _check_band(self.W, self.Lambda)
        if not isinstance(self.sampler, TwoSidedExponential):
            raise ProfileInvalid(
                f"BandProfile needs a TwoSidedExponential sampler, got {type(self.sampler).__name__}"
            )

    @property
    def support(self):
        return (self.W, self.Lambda)

    def rhs(self, k):
        """Right-hand side of the tanh relation, ignoring the band mask."""
        k = np.asarray(k, dtype=float)
        # (A/2)(l1/(l1^2+4k^2) + l2/(l2^2+4k^2)); the transform already carries A.
        return 0.5 * self.sampler.transform_real(2.0 * k)

    def tanh_g(self, k):
        k = np.asarray(k, dtype=float)
        inside = (k >= self.W) & (k <= self.Lambda)
        return np.where(inside, self.rhs(k), 0.0)

    def g(self, k):
        tau = self.tanh_g(k)
        if np.any(tau >= 1.0):
            bad = np.asarray(k, dtype=float)[tau >= 1.0].flat[0]
            raise ProfileInvalid(f"tanh g = {tau.max()} >= 1 at k = {bad}", k=float(bad))
        return np.arctanh(tau)


@dataclass(frozen=True)
class ConstantBand:
    """Constant squeeze ``g0`` on ``[W, Lambda]`` (comparison profile)."""

    W: float
    Lambda: float
    g0: float

    def __post_init__(self):
        _check_band(self.W, self.Lambda)
        if not (math.isfinite(self.g0) and self.g0 >= 0):
            raise ProfileInvalid(f"g0 must be finite and non-negative, got {self.g0!r}")

    @property
    def support(self):
        return (self.W, self.Lambda)

    def g(self, k):
        k = np.asarray(k, dtype=float)
        inside = (k >= self.W) & (k <= self.Lambda)
        return np.where(inside, self.g0, 0.0)

    def tanh_g(self, k):
        return np.tanh(self.g(k))


SqueezeProfile = ZeroProfile | BandProfile | ConstantBand


def squeeze_at(p: SqueezeProfile, k):
    """Squeeze parameter ``g(k)``; raises :class:`ProfileInvalid` if ``tanh g >= 1``."""
    if np.any(np.asarray(k) < 0):
        raise ValueError("wavenumber must be non-negative")
    g = p.g(k)
    return g.item() if g.ndim == 0 else g


def validate_profile(p: SqueezeProfile, scan_points: int = 257) -> None:
    """Check that ``tanh g < 1`` across the band.

    The band right-hand side decreases for ``k >= max(lambda)/2``, so the
    lower edge plus a log-spaced scan covers it.  Raises
    :class:`ProfileInvalid` carrying the first violating wavenumber.
    """
    if not isinstance(p, BandProfile):
        return
    ks = np.concatenate(([p.W], np.geomspace(p.W, p.Lambda, scan_points)))
    tau = p.rhs(ks)
    bad = np.flatnonzero(tau >= 1.0)
    if bad.size:
        k = float(ks[bad[0]])
        raise ProfileInvalid(f"tanh g would be {tau[bad[0]]:.6g} >= 1 at k = {k}", k=k)
