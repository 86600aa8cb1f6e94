"""Flat ``key = value`` experiment configuration.

Example::

    # tuned band, decade sweep
    sampler.kind = two_sided_exponential
    sampler.lambda1 = 1
    sampler.lambda2 = 1
    profile.kind = band
    profile.w = 100
    profile.lambda_uv = 1e8
    sweep.grid = 1e4, 1e5, 1e6, 1e7, 1e8

Lines starting with ``#`` and trailing ``# ...`` comments are ignored.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields, replace

from .density import EnergyDensityModel
from .errors import ConfigError, ProfileInvalid
from .quadrature import QuadratureConfig
from .sampling import Gaussian, Lorentzian, TwoSidedExponential
from .squeeze import BandProfile, ConstantBand, ZeroProfile

SAMPLER_KINDS = ("two_sided_exponential", "lorentzian", "gaussian")
PROFILE_KINDS = ("band", "constant_band", "zero")

# dotted key -> (attribute, parser)
_FLOAT = float


def _grid(text):
    text = text.strip()
    if text.lower() in ("", "default"):
        return None
    return tuple(float(v) for v in text.split(","))


KEYS = {
    "sampler.kind": ("sampler_kind", str),
    "sampler.lambda1": ("lambda1", _FLOAT),
    "sampler.lambda2": ("lambda2", _FLOAT),
    "sampler.t0": ("t0", _FLOAT),
    "sampler.tau": ("tau", _FLOAT),
    "profile.kind": ("profile_kind", str),
    "profile.w": ("w", _FLOAT),
    "profile.lambda_uv": ("lambda_uv", _FLOAT),
    "profile.g0": ("g0", _FLOAT),
    "sweep.grid": ("sweep_grid", _grid),
    "quad.rel_tol": ("rel_tol", _FLOAT),
    "quad.abs_tol": ("abs_tol", _FLOAT),
    "verdict.tol": ("verdict_tol", _FLOAT),
}
_ATTR_TO_KEY = {attr: key for key, (attr, _) in KEYS.items()}


@dataclass(frozen=True)
class ExperimentConfig:
    sampler_kind: str = "two_sided_exponential"
    lambda1: float = 1.0
    lambda2: float = 1.0
    t0: float = 1.0
    tau: float = 1.0
    profile_kind: str = "band"
    w: float = 100.0
    lambda_uv: float = 1e8
    g0: float = 0.1
    sweep_grid: tuple | None = None
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    verdict_tol: float = 0.02

    def __post_init__(self):
        if self.sampler_kind not in SAMPLER_KINDS:
            raise ConfigError(f"unknown sampler {self.sampler_kind!r}; choose from {SAMPLER_KINDS}",
                              "sampler.kind")
        if self.profile_kind not in PROFILE_KINDS:
            raise ConfigError(f"unknown profile {self.profile_kind!r}; choose from {PROFILE_KINDS}",
                              "profile.kind")
        for attr in ("lambda1", "lambda2", "t0", "tau", "w", "lambda_uv", "rel_tol", "abs_tol", "verdict_tol"):
            value = getattr(self, attr)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"must be a positive finite number, got {value!r}", _ATTR_TO_KEY[attr])
        if not (math.isfinite(self.g0) and self.g0 >= 0):
            raise ConfigError(f"must be finite and non-negative, got {self.g0!r}", "profile.g0")
        if self.sweep_grid is not None:
            if not self.sweep_grid or any(not (math.isfinite(v) and v > 0) for v in self.sweep_grid):
                raise ConfigError("cutoffs must be positive finite numbers", "sweep.grid")

    # --- parsing / serialization -------------------------------------------

    @classmethod
    def from_items(cls, items, base: "ExperimentConfig | None" = None):
        """Apply ``(key, text)`` pairs on top of ``base`` (or the defaults)."""
        updates = {}
        for key, text in items:
            key = key.strip()
            if key not in KEYS:
                raise ConfigError("unknown key", key)
            attr, parse = KEYS[key]
            try:
                updates[attr] = parse(text.strip())
            except ValueError as exc:
                raise ConfigError(f"cannot parse {text.strip()!r} ({exc})", key) from None
        return replace(base or cls(), **updates)

    @classmethod
    def parse(cls, text: str, base=None):
        items = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
            key, value = line.split("=", 1)
            items.append((key, value))
        return cls.from_items(items, base)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "sweep_grid":
                value = "default" if value is None else ", ".join(repr(v) for v in value)
            lines.append(f"{_ATTR_TO_KEY[f.name]} = {value}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]

    # --- model construction --------------------------------------------------

    def build_sampler(self):
        if self.sampler_kind == "two_sided_exponential":
            return TwoSidedExponential(self.lambda1, self.lambda2)
        if self.sampler_kind == "lorentzian":
            return Lorentzian(self.t0)
        return Gaussian(self.tau)

    def build_profile(self, Lambda=None):
        Lambda = self.lambda_uv if Lambda is None else Lambda
        try:
            if self.profile_kind == "zero":
                return ZeroProfile()
            if self.profile_kind == "constant_band":
                return ConstantBand(self.w, Lambda, self.g0)
            sampler = self.build_sampler()
            if not isinstance(sampler, TwoSidedExponential):
                raise ConfigError("the band profile needs sampler.kind = two_sided_exponential", "profile.kind")
            return BandProfile(self.w, Lambda, sampler)
        except ProfileInvalid as exc:
            raise ConfigError(str(exc), "profile") from None

    def build_model(self, Lambda=None) -> EnergyDensityModel:
        quad = QuadratureConfig(rel_tol=self.rel_tol, abs_tol=self.abs_tol)
        try:
            return EnergyDensityModel(self.build_profile(Lambda), self.build_sampler(), quad)
        except ProfileInvalid as exc:
            raise ConfigError(str(exc), "profile") from None

    def cutoff_grid(self):
        if self.sweep_grid is not None:
            return list(self.sweep_grid)
        from .sweep import default_grid

        return default_grid(self.w)
