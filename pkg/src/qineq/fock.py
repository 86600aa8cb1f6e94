"""Dense truncated-Fock-space oracle for single-mode squeezing.

Operators are plain complex ``(N, N)`` numpy arrays acting on the Fock levels
``|0>, ..., |N-1>``.  The truncation breaks ``[a, a^dag] = 1`` only in the last
diagonal entry; results are trusted only while the squeezed state keeps
negligible weight near the top level.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceFailure, DimensionTooSmall, TruncationError

__all__ = [
    "build_ladder",
    "build_squeeze_generator",
    "matrix_exp",
    "bch_conjugate",
    "squeezed_vacuum",
    "bogoliubov_expectations",
    "max_admissible_squeeze",
]

LEAK_TOL = 1e-12
EXP_RESIDUAL_TOL = 1e-10


def build_ladder(N: int):
    """Return ``(a, a_dag)`` with ``a[n-1, n] = sqrt(n)``."""
    if N < 2:
        raise DimensionTooSmall(f"Fock truncation needs N >= 2, got {N}")
    a = np.diag(np.sqrt(np.arange(1, N, dtype=float)), k=1).astype(complex)
    return a, a.conj().T.copy()


def build_squeeze_generator(f: float, N: int):
    """``C = (f/2)(a^dag a^dag - a a)``; anti-Hermitian by construction."""
    a, ad = build_ladder(N)
    return 0.5 * f * (ad @ ad - a @ a)


def _taylor_exp(X, tol=np.finfo(float).eps, max_terms=60):
    result = np.eye(X.shape[0], dtype=X.dtype)
    term = result.copy()
    for n in range(1, max_terms + 1):
        term = term @ X / n
        result = result + term
        if np.abs(term).max() <= tol * np.abs(result).max():
            return result
    raise ConvergenceFailure(f"Taylor kernel did not converge in {max_terms} terms")


def _scaled_exp(M):
    norm = np.abs(M).sum(axis=0).max()
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0 else 0
    E = _taylor_exp(M / 2.0**squarings)
    for _ in range(squarings):
        E = E @ E
    return E


def matrix_exp(M, check: bool = True):
    """Matrix exponential by scaling and squaring around a Taylor kernel.

    With ``check`` the residual ``max|exp(M) exp(-M) - I|`` must stay below
    1e-10, otherwise :class:`ConvergenceFailure` is raised.
    """
    M = np.asarray(M)
    if not np.all(np.isfinite(M)):
        raise ConvergenceFailure("matrix has non-finite entries")
    M = M.astype(np.result_type(M.dtype, float))
    E = _scaled_exp(M)
    if check:
        residual = np.abs(E @ _scaled_exp(-M) - np.eye(M.shape[0])).max()
        if residual > EXP_RESIDUAL_TOL:
            raise ConvergenceFailure(f"exp(M) exp(-M) deviates from identity by {residual:.3e}")
    return E


def bch_conjugate(X, C, tol=1e-16, max_terms=200):
    """``exp(-C) X exp(C)`` summed as the nested-commutator series.

    ``X + [X, C] + [[X, C], C]/2! + ...``, stopping once a term is negligible.
    """
    result = X.astype(complex)
    term = result.copy()
    for n in range(1, max_terms + 1):
        term = (term @ C - C @ term) / n
        result = result + term
        if np.abs(term).max() <= tol * max(1.0, np.abs(result).max()):
            return result
    raise ConvergenceFailure(f"BCH series did not converge in {max_terms} terms")


def max_admissible_squeeze(N: int) -> float:
    """Largest ``|f|`` with ``tanh(|f|)**N < 1e-12``."""
    return math.atanh(LEAK_TOL ** (1.0 / N))


def _check_truncation(f, N):
    if N < 2:
        raise DimensionTooSmall(f"Fock truncation needs N >= 2, got {N}")
    leak = math.tanh(abs(f)) ** N
    if leak >= LEAK_TOL:
        raise TruncationError(
            f"squeeze |f| = {abs(f)} leaks ~{leak:.3e} past level {N}; "
            f"need |f| < {max_admissible_squeeze(N):.4g} or a larger N"
        )


def squeezed_vacuum(f: float, N: int):
    """State vector ``exp(C)|0>`` on the truncated space."""
    _check_truncation(f, N)
    U = matrix_exp(build_squeeze_generator(f, N))
    return U[:, 0]


def bogoliubov_expectations(f: float, N: int):
    """``(<a^dag a>, <a a>)`` in the squeezed vacuum, computed by brute force.

    Analytically these are ``sinh(f)**2`` and ``cosh(f) sinh(f)``.
    """
    psi = squeezed_vacuum(f, N)
    top = float(np.sum(np.abs(psi[-2:]) ** 2))
    if top > LEAK_TOL:
        raise TruncationError(f"population {top:.3e} in the top two Fock levels")
    a, _ = build_ladder(N)
    a_psi = a @ psi
    n_expect = np.vdot(a_psi, a_psi)
    aa_expect = np.vdot(psi, a @ a_psi)
    for name, value in (("<a^dag a>", n_expect), ("<a a>", aa_expect)):
        if abs(value.imag) > 1e-12:
            raise ConvergenceFailure(f"{name} has imaginary part {value.imag:.3e}")
    return float(n_expect.real), float(aa_expect.real)
