"""Adaptive one-dimensional quadrature for band-limited radial integrals.

The engine is a vectorized global-adaptive Gauss-Kronrod (10/21) scheme.
Integrands must accept a numpy array of abscissae and return an array of the
same shape (a scalar return is broadcast).  All panels of one refinement pass
are evaluated in a single call.

Panel error is ``|K21 - G10|``.  Each panel also carries a roundoff floor:
``50 eps`` times its absolute integral, plus, for integrands with phases
``omega x``, a phase-rounding term ``eps omega |x|`` times the same.  Panels at
their floor are never split.  In the total, unresolved panels contribute
``|K21 - G10|``, resolved panels their fixed floor, and phase noise of
resolved panels adds in quadrature (independent rounding).  A result whose
remaining error is all roundoff is returned with ``roundoff_limited=True``
instead of failing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ToleranceNotMet

__all__ = [
    "QuadratureConfig",
    "QuadratureResult",
    "integrate",
    "integrate_oscillatory",
    "CosineTransform",
]

# QUADPACK qk21 abscissae (non-negative half) and weights.
_XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
# 10-point Gauss weights sit on the odd-indexed Kronrod abscissae.
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

_NODES = np.concatenate((-_XGK[:-1], _XGK[::-1]))
_KW = np.concatenate((_WGK[:-1], _WGK[::-1]))
_GW = np.zeros(21)
_GW[1:10:2] = _WG
_GW[11:20:2] = _WG[::-1]

_EPS = np.finfo(float).eps
_ROUNDOFF = 50.0 * _EPS
_LOG_SPACING_RATIO = 1e3
_PANELS_PER_DECADE = 4
_LOG_FLOOR = 1e-16


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 10**6
    breakpoints: tuple = ()

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 0:
            raise ValueError("max_subdivisions must be non-negative")
        bp = tuple(float(b) for b in self.breakpoints)
        if any(b1 >= b2 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bp)

    def with_breakpoints(self, *points):
        merged = sorted(set(self.breakpoints) | {float(p) for p in points})
        return QuadratureConfig(self.rel_tol, self.abs_tol, self.max_subdivisions, tuple(merged))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    roundoff_limited: bool = field(default=False, compare=False)


def _log_panels(lo, hi):
    # Below hi * 1e-16 one plain panel suffices; this also keeps hi / lo finite.
    start = max(lo, hi * _LOG_FLOOR)
    n = math.ceil(_PANELS_PER_DECADE * math.log10(hi / start))
    seg = np.geomspace(start, hi, n + 1)
    return seg if start == lo else np.concatenate(([lo], seg))


def _initial_edges(a, b, breakpoints, max_panel_width):
    cuts = [a] + [p for p in breakpoints if a < p < b] + [b]
    edges = [a]
    for lo, hi in zip(cuts, cuts[1:]):
        if lo > 0 and hi > _LOG_SPACING_RATIO * lo:
            seg = _log_panels(lo, hi)
        elif hi < 0 and -lo > _LOG_SPACING_RATIO * -hi:
            seg = -_log_panels(-hi, -lo)[::-1]
        else:
            seg = np.array([lo, hi])
        if max_panel_width is not None:
            refined = [seg[0]]
            for s_lo, s_hi in zip(seg[:-1], seg[1:]):
                m = max(1, math.ceil((s_hi - s_lo) / max_panel_width))
                refined.extend(np.linspace(s_lo, s_hi, m + 1)[1:])
            seg = np.array(refined)
        seg[0], seg[-1] = lo, hi
        edges.extend(seg[1:])
    return np.asarray(edges, dtype=float)


def _gk21(f, lo, hi, phase_rate):
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(f(x.ravel()), dtype=float)
    y = np.broadcast_to(y, x.size).reshape(x.shape)
    if not np.all(np.isfinite(y)):
        raise FloatingPointError("integrand returned non-finite values")
    kronrod = half * (y @ _KW)
    gauss = half * (y @ _GW)
    resabs = np.abs(half) * (np.abs(y) @ _KW)
    phase_noise = _EPS * phase_rate * np.maximum(np.abs(lo), np.abs(hi)) * resabs
    return kronrod, np.abs(kronrod - gauss), _ROUNDOFF * resabs, phase_noise


def integrate(f, a, b, cfg: QuadratureConfig | None = None, max_panel_width=None,
              phase_rate: float = 0.0) -> QuadratureResult:
    """Adaptive integral of ``f`` over the finite interval ``[a, b]``.

    Panels are always split at ``cfg.breakpoints`` inside ``(a, b)``; segments
    spanning more than three decades start from log-spaced panels; and
    ``max_panel_width`` caps the initial panel width.  The total error
    estimate is driven below ``max(rel_tol |I|, abs_tol)``.

    ``phase_rate`` declares that the integrand contains phases up to
    ``phase_rate * |x|``; the roundoff floor grows accordingly, since the
    rounding of ``x`` alone perturbs such a phase by ``eps phase_rate |x|``.
    """
    cfg = cfg or QuadratureConfig()
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integration limits must be finite")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if a > b:
        r = integrate(f, b, a, cfg, max_panel_width, phase_rate)
        return QuadratureResult(-r.value, r.error_estimate, r.evaluations, r.roundoff_limited)

    edges = _initial_edges(a, b, cfg.breakpoints, max_panel_width)
    lo, hi = edges[:-1], edges[1:]
    val, trunc, floor, noise = _gk21(f, lo, hi, phase_rate)
    evaluations = 21 * lo.size
    splits = 0

    while True:
        total = float(val.sum())
        resolved = trunc <= floor + noise
        err = np.where(resolved, floor, trunc)
        floor_total = float(err[resolved].sum())
        floor_total += math.sqrt(float(np.sum(np.maximum(trunc, noise)[resolved] ** 2)))
        err_total = float(err[~resolved].sum()) + floor_total
        tol = max(cfg.rel_tol * abs(total), cfg.abs_tol)
        if err_total <= tol:
            return QuadratureResult(total, err_total, evaluations)

        width_ok = (hi - lo) > 64 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        candidate = ~resolved & width_ok
        if not candidate.any() or (floor_total >= 0.5 * tol and float(trunc[candidate].sum()) <= floor_total):
            return QuadratureResult(total, err_total, evaluations, roundoff_limited=True)

        # Split the largest-error panels until the untouched remainder fits in tol/2.
        order = np.argsort(-np.where(candidate, err, -1.0), kind="stable")
        order = order[candidate[order]]
        remaining = err_total - np.cumsum(err[order])
        n_split = int(np.searchsorted(-remaining, -0.5 * tol)) + 1
        pick = order[: min(n_split, order.size)]

        if splits + pick.size > cfg.max_subdivisions:
            raise ToleranceNotMet(
                f"subdivision budget {cfg.max_subdivisions} exhausted "
                f"(error {err_total:.3e} > tolerance {tol:.3e})",
                value=total,
                error_estimate=err_total,
            )
        splits += pick.size

        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate((lo[pick], mid))
        new_hi = np.concatenate((mid, hi[pick]))
        nv, nt, nf, nn = _gk21(f, new_lo, new_hi, phase_rate)
        evaluations += 21 * new_lo.size

        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        lo = np.concatenate((lo[keep], new_lo))
        hi = np.concatenate((hi[keep], new_hi))
        val = np.concatenate((val[keep], nv))
        trunc = np.concatenate((trunc[keep], nt))
        floor = np.concatenate((floor[keep], nf))
        noise = np.concatenate((noise[keep], nn))


def integrate_oscillatory(envelope, omega, a, b, cfg: QuadratureConfig | None = None,
                          period_fraction: float = 0.5) -> QuadratureResult:
    """``int_a^b envelope(k) cos(omega k) dk`` with period-capped panels.

    Initial panels are no wider than ``period_fraction * 2 pi / |omega|``;
    adaptive refinement then proceeds as in :func:`integrate`.
    """
    if not 0 < period_fraction <= 1:
        raise ValueError("period_fraction must lie in (0, 1]")
    omega = float(omega)

    def integrand(k):
        env = np.broadcast_to(np.asarray(envelope(k), dtype=float), np.shape(k))
        return env * np.cos(omega * k)

    cap = None if omega == 0 else period_fraction * 2.0 * math.pi / abs(omega)
    return integrate(integrand, a, b, cfg, max_panel_width=cap, phase_rate=abs(omega))


class CosineTransform:
    """``F(omega) = int_a^b h(k) cos(omega k) dk`` for many omegas at once.

    ``h`` is expanded in Legendre series of fixed order on panels, refined by
    bisection until the trailing coefficients are negligible.  Each panel is
    then integrated against ``exp(i omega k)`` exactly through
    ``int_{-1}^{1} P_n(x) exp(i a x) dx = 2 i^n j_n(a)``, so the cost per
    omega does not grow with the number of oscillations.
    """

    def __init__(self, envelope, a, b, breakpoints=(), order=24, coeff_tol=1e-15, max_panels=4096):
        a, b = float(a), float(b)
        if not a < b:
            raise ValueError("need a < b")
        self.order = order
        nodes, weights = np.polynomial.legendre.leggauss(order)
        basis = np.polynomial.legendre.legvander(nodes, order - 1)  # (node, n)
        project = (basis * weights[:, None]).T * ((2 * np.arange(order) + 1) / 2.0)[:, None]

        cuts = [a] + [p for p in sorted(breakpoints) if a < p < b] + [b]
        pending = []
        for lo, hi in zip(cuts, cuts[1:]):
            if lo > 0 and hi / lo > 2:
                seg = np.geomspace(lo, hi, math.ceil(math.log2(hi / lo)) + 1)
            else:
                seg = np.array([lo, hi])
            pending.extend(zip(seg[:-1], seg[1:]))

        done = []
        while pending:
            los = np.array([p[0] for p in pending])
            his = np.array([p[1] for p in pending])
            c, r = 0.5 * (los + his), 0.5 * (his - los)
            x = c[:, None] + r[:, None] * nodes[None, :]
            y = np.broadcast_to(np.asarray(envelope(x.ravel()), dtype=float), x.size).reshape(x.shape)
            if not np.all(np.isfinite(y)):
                raise FloatingPointError("envelope returned non-finite values")
            coeffs = y @ project.T
            tail = np.abs(coeffs[:, -1]) + np.abs(coeffs[:, -2])
            scale = np.abs(coeffs).sum(axis=1)
            # Projection rounding leaves ~(2n+1) eps max|y| in coefficient n; refinement cannot beat that.
            noise = 2 * order * _EPS * np.abs(y).max(axis=1)
            ok = tail <= np.maximum(coeff_tol * scale, noise)
            ok |= scale == 0
            ok |= r <= 1e3 * _EPS * np.abs(c)
            done.extend(zip(c[ok], r[ok], coeffs[ok], tail[ok], scale[ok]))
            if len(done) + 2 * int((~ok).sum()) > max_panels:
                raise ToleranceNotMet("CosineTransform panel budget exhausted", value=math.nan,
                                      error_estimate=math.inf)
            pending = [(lo, cc) for lo, cc in zip(los[~ok], c[~ok])]
            pending += [(cc, hi) for cc, hi in zip(c[~ok], his[~ok])]

        done.sort(key=lambda item: item[0])
        self.centers = np.array([d[0] for d in done])
        self.halfwidths = np.array([d[1] for d in done])
        self.coeffs = np.array([d[2] for d in done])
        # |int P_n e^{iax}| <= 2: truncation bound from the last two terms, plus roundoff.
        truncation = float(np.sum(2 * self.halfwidths * np.array([d[3] for d in done])))
        roundoff = float(np.sum(2 * self.halfwidths * np.array([d[4] for d in done]))) * 10 * _EPS
        self.error_bound = truncation + roundoff

    @property
    def panels(self) -> int:
        return self.centers.size

    def __call__(self, omegas):
        omegas = np.asarray(omegas, dtype=float)
        values = _kernels.filon_cos(omegas.ravel(), self.centers, self.halfwidths, self.coeffs)
        return values.reshape(omegas.shape)
