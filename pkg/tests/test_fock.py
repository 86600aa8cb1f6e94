import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from qineq.errors import ConvergenceFailure, DimensionTooSmall, TruncationError
from qineq.fock import (
    bch_conjugate,
    bogoliubov_expectations,
    build_ladder,
    build_squeeze_generator,
    matrix_exp,
    max_admissible_squeeze,
    squeezed_vacuum,
)


def test_ladder_entries_and_commutator():
    a, ad = build_ladder(6)
    assert a[2, 3] == pytest.approx(math.sqrt(3))
    comm = a @ ad - ad @ a
    # Exact identity except the last diagonal entry, which the truncation breaks.
    np.testing.assert_allclose(np.diag(comm)[:-1], 1.0, atol=1e-14)
    assert np.diag(comm)[-1] == pytest.approx(-5.0)


def test_ladder_rejects_tiny_dimension():
    with pytest.raises(DimensionTooSmall):
        build_ladder(1)


def test_generator_is_anti_hermitian():
    C = build_squeeze_generator(0.3, 20)
    np.testing.assert_allclose(C.conj().T, -C, atol=0)


def test_squeeze_unitary_is_unitary():
    U = matrix_exp(build_squeeze_generator(0.3, 60))
    np.testing.assert_allclose(U.conj().T @ U, np.eye(60), atol=1e-12)


@pytest.mark.parametrize("scale", [1e-3, 0.7, 5.0, 40.0])
def test_matrix_exp_matches_scipy(scale):
    rng = np.random.default_rng(3)
    M = scale * (rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))) / 12
    ref = expm(M)
    np.testing.assert_allclose(matrix_exp(M, check=scale < 10), ref, rtol=1e-11, atol=1e-12 * np.abs(ref).max())


def test_matrix_exp_zero_and_nonfinite():
    np.testing.assert_array_equal(matrix_exp(np.zeros((3, 3))), np.eye(3))
    with pytest.raises(ConvergenceFailure):
        matrix_exp(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_matrix_exp_residual_check_trips():
    # Eigenvalues +-40 with mixed eigenvectors: exp(M) exp(-M) loses everything to rounding.
    with pytest.raises(ConvergenceFailure):
        matrix_exp(np.array([[40.0, 1.0], [1.0, -40.0]]))


def test_bch_agrees_with_direct_conjugation_and_bogoliubov_form():
    f, N = 0.2, 60
    a, ad = build_ladder(N)
    C = build_squeeze_generator(f, N)
    U = matrix_exp(C)
    direct = U.conj().T @ a @ U
    series = bch_conjugate(a, C)
    block = slice(0, 20)
    np.testing.assert_allclose(series[block, block], direct[block, block], atol=1e-12)
    mixing = a * math.cosh(f) + ad * math.sinh(f)
    np.testing.assert_allclose(series[block, block], mixing[block, block], atol=1e-12)


def test_negative_squeeze_sign():
    n, aa = bogoliubov_expectations(-0.2, 40)
    assert n == pytest.approx(math.sinh(0.2) ** 2, abs=1e-12)
    assert aa == pytest.approx(-math.cosh(0.2) * math.sinh(0.2), abs=1e-12)


def test_moderate_squeeze_value():
    n, aa = bogoliubov_expectations(0.2, 40)
    assert n == pytest.approx(0.0405362, abs=1e-7)
    assert aa == pytest.approx(0.2053762, abs=1e-7)


def test_zero_squeeze_is_vacuum():
    psi = squeezed_vacuum(0.0, 10)
    np.testing.assert_array_equal(psi, np.eye(10)[:, 0])
    assert bogoliubov_expectations(0.0, 10) == (0.0, 0.0)


def test_truncation_guard():
    with pytest.raises(TruncationError):
        bogoliubov_expectations(5.0, 40)
    with pytest.raises(TruncationError):
        bogoliubov_expectations(max_admissible_squeeze(30) * 1.01, 30)


def test_two_modes_factorize():
    # Two independent squeezed modes via Kronecker products reproduce each single-mode answer.
    N = 24
    a, ad = build_ladder(N)
    eye = np.eye(N)
    f1, f2 = 0.1, -0.25
    C = np.kron(build_squeeze_generator(f1, N), eye) + np.kron(eye, build_squeeze_generator(f2, N))
    U = matrix_exp(C)
    psi = U[:, 0]
    a2 = np.kron(eye, a)
    n2 = np.vdot(a2 @ psi, a2 @ psi).real
    aa2 = np.vdot(psi, a2 @ a2 @ psi).real
    assert n2 == pytest.approx(math.sinh(f2) ** 2, abs=1e-12)
    assert aa2 == pytest.approx(math.cosh(f2) * math.sinh(f2), abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=-0.3, max_value=0.3))
def test_property_expectations(f):
    n, aa = bogoliubov_expectations(f, 60)
    assert abs(n - math.sinh(f) ** 2) <= 1e-12
    assert abs(aa - math.cosh(f) * math.sinh(f)) <= 1e-12
    assert n >= 0
