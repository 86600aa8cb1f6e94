"""Hot loops for the batched Legendre-Filon cosine transform.

Each kernel exists twice: a numba ``@njit`` version and a vectorized numpy
version.  Set ``QINEQ_DISABLE_NUMBA=1`` (or run without numba installed) to
route the public names to the numpy path.  Both are always importable under
explicit names so the benchmark and tests can compare them.

Spherical Bessel functions ``j_n(x)`` for ``n < M`` use three regimes:
power series for ``x < 1``, normalized Miller downward recurrence for
``1 <= x < M`` and plain upward recurrence for ``x >= M``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

NUMBA_DISABLED = os.environ.get("QINEQ_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
HAS_NUMBA = numba is not None
USE_NUMBA = HAS_NUMBA and not NUMBA_DISABLED

_SERIES_TERMS = 18
_MILLER_EXTRA = 24
_CHUNK = 1 << 15


# --- numpy path -------------------------------------------------------------


def sph_jn_numpy(x, M):
    """Table ``out[i, n] = j_n(x[i])`` for ``0 <= n < M`` (``x >= 0``)."""
    x = np.ascontiguousarray(x, dtype=float).ravel()
    out = np.zeros((x.size, M))

    small = x < 1.0
    if small.any():
        xs = x[small]
        half_x2 = 0.5 * xs * xs
        pref = np.ones_like(xs)
        for n in range(M):
            if n:
                pref = pref * xs / (2 * n + 1)
            term = pref.copy()
            acc = pref.copy()
            for k in range(1, _SERIES_TERMS):
                term = -term * half_x2 / (k * (2 * n + 2 * k + 1))
                acc += term
            out[small, n] = acc

    mid = (~small) & (x < M)
    if mid.any():
        xm = x[mid]
        start = 2 * M + _MILLER_EXTRA
        nxt = np.zeros_like(xm)
        cur = np.ones_like(xm)
        table = np.zeros((xm.size, M))
        for n in range(start, 0, -1):
            prev = (2 * n + 1) / xm * cur - nxt
            nxt, cur = cur, prev
            if n - 1 < M:
                table[:, n - 1] = cur
        sin, cos = np.sin(xm), np.cos(xm)
        j0 = sin / xm
        j1 = sin / (xm * xm) - cos / xm
        use_j0 = np.abs(j0) >= np.abs(j1)
        scale = np.where(use_j0, j0 / table[:, 0], j1 / table[:, 1])
        out[mid] = table * scale[:, None]

    big = x >= M
    if big.any():
        xb = x[big]
        sin, cos = np.sin(xb), np.cos(xb)
        prev = sin / xb
        out[big, 0] = prev
        if M > 1:
            cur = sin / (xb * xb) - cos / xb
            out[big, 1] = cur
            for n in range(1, M - 1):
                prev, cur = cur, (2 * n + 1) / xb * cur - prev
                out[big, n + 1] = cur
    return out


def _split_parity(coeffs):
    """Fold ``i**n`` into signed even/odd coefficient arrays."""
    M = coeffs.shape[1]
    n = np.arange(M)
    sign = np.where((n // 2) % 2 == 0, 1.0, -1.0)
    even = np.where(n % 2 == 0, coeffs * sign, 0.0)
    odd = np.where(n % 2 == 1, coeffs * sign, 0.0)
    return np.ascontiguousarray(even), np.ascontiguousarray(odd)


def filon_cos_numpy(omegas, centers, halfwidths, coeffs):
    """``sum_p int_{panel p} h(k) cos(omega k) dk`` for each omega.

    ``h`` on panel ``p`` is the Legendre series ``coeffs[p]`` in the local
    variable ``x = (k - centers[p]) / halfwidths[p]``.
    """
    omegas = np.abs(np.ascontiguousarray(omegas, dtype=float).ravel())
    even, odd = _split_parity(np.asarray(coeffs, dtype=float))
    M = even.shape[1]
    out = np.zeros(omegas.size)
    for start in range(0, omegas.size, _CHUNK):
        w = omegas[start:start + _CHUNK]
        acc = np.zeros(w.size)
        for p in range(centers.size):
            j = sph_jn_numpy(w * halfwidths[p], M)
            theta = w * centers[p]
            acc += 2.0 * halfwidths[p] * (np.cos(theta) * (j @ even[p]) - np.sin(theta) * (j @ odd[p]))
        out[start:start + _CHUNK] = acc
    return out


# --- numba path -------------------------------------------------------------

if HAS_NUMBA:

    @numba.njit(cache=True)
    def _sph_jn_row(x, M, out, work):
        if x < 1.0:
            half_x2 = 0.5 * x * x
            pref = 1.0
            for n in range(M):
                if n:
                    pref *= x / (2 * n + 1)
                term = pref
                acc = pref
                for k in range(1, _SERIES_TERMS):
                    term = -term * half_x2 / (k * (2 * n + 2 * k + 1))
                    acc += term
                out[n] = acc
        elif x < M:
            start = 2 * M + _MILLER_EXTRA
            nxt = 0.0
            cur = 1.0
            for n in range(start, 0, -1):
                prev = (2 * n + 1) / x * cur - nxt
                nxt = cur
                cur = prev
                if n - 1 < M:
                    work[n - 1] = cur
            s = np.sin(x)
            c = np.cos(x)
            j0 = s / x
            j1 = s / (x * x) - c / x
            if abs(j0) >= abs(j1):
                scale = j0 / work[0]
            else:
                scale = j1 / work[1]
            for n in range(M):
                out[n] = work[n] * scale
        else:
            s = np.sin(x)
            c = np.cos(x)
            prev = s / x
            out[0] = prev
            if M > 1:
                cur = s / (x * x) - c / x
                out[1] = cur
                for n in range(1, M - 1):
                    nxt = (2 * n + 1) / x * cur - prev
                    prev = cur
                    cur = nxt
                    out[n + 1] = cur

    @numba.njit(cache=True)
    def sph_jn_numba(x, M):
        out = np.zeros((x.size, M))
        work = np.empty(M)
        for i in range(x.size):
            _sph_jn_row(x[i], M, out[i], work)
        return out

    @numba.njit(cache=True)
    def _filon_cos_numba(omegas, centers, halfwidths, even, odd):
        P, M = even.shape
        out = np.zeros(omegas.size)
        j = np.empty(M)
        work = np.empty(M)
        for i in range(omegas.size):
            w = abs(omegas[i])
            acc = 0.0
            for p in range(P):
                _sph_jn_row(w * halfwidths[p], M, j, work)
                se = 0.0
                so = 0.0
                for n in range(M):
                    se += even[p, n] * j[n]
                    so += odd[p, n] * j[n]
                theta = w * centers[p]
                acc += 2.0 * halfwidths[p] * (np.cos(theta) * se - np.sin(theta) * so)
            out[i] = acc
        return out

    def filon_cos_numba(omegas, centers, halfwidths, coeffs):
        """numba twin of :func:`filon_cos_numpy`."""
        even, odd = _split_parity(np.asarray(coeffs, dtype=float))
        return _filon_cos_numba(
            np.ascontiguousarray(omegas, dtype=float).ravel(),
            np.ascontiguousarray(centers, dtype=float),
            np.ascontiguousarray(halfwidths, dtype=float),
            even,
            odd,
        )

else:  # pragma: no cover
    sph_jn_numba = None
    filon_cos_numba = None


if USE_NUMBA:
    filon_cos = filon_cos_numba

    def sph_jn(x, M):
        return sph_jn_numba(np.ascontiguousarray(x, dtype=float).ravel(), M)
else:
    filon_cos = filon_cos_numpy
    sph_jn = sph_jn_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
