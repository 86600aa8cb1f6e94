import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from oracles import exponential_transform, exponential_transform_osc
from qineq.sampling import (
    Gaussian,
    Lorentzian,
    TwoSidedExponential,
    sampler_eval,
    sampler_transform,
    sampler_transform_real,
)

rates = st.floats(min_value=0.1, max_value=10.0)
freqs = st.floats(min_value=0.0, max_value=1e3)
# The period-sum oracle needs a representable period.
oracle_freqs = st.just(0.0) | st.floats(min_value=1e-6, max_value=1e3)


def test_exponential_value_left_of_origin():
    # (2/3) e^{-1}
    assert sampler_eval(TwoSidedExponential(1.0, 2.0), -1.0) == pytest.approx(0.245253, abs=1e-6)
    assert sampler_eval(TwoSidedExponential(1.0, 2.0), -1.0) == pytest.approx(2.0 / 3.0 * math.exp(-1.0), rel=1e-15)


def test_exponential_continuous_at_origin():
    s = TwoSidedExponential(0.7, 3.0)
    assert sampler_eval(s, -1e-300) == pytest.approx(sampler_eval(s, 0.0), rel=1e-15)
    assert sampler_eval(s, 0.0) == s.amplitude


def test_transform_at_zero_is_one():
    for s in (TwoSidedExponential(0.3, 7.0), Lorentzian(2.0), Gaussian(0.5)):
        assert abs(sampler_transform(s, 0.0) - 1.0) <= 1e-15


def test_scalar_in_scalar_out():
    s = TwoSidedExponential(1.0, 1.0)
    assert isinstance(sampler_transform(s, 3.0), complex)
    assert isinstance(sampler_transform_real(s, 3.0), float)
    assert sampler_transform_real(s, np.array([1.0, 2.0])).shape == (2,)


def test_symmetric_transform_is_real():
    s = TwoSidedExponential(1.5, 1.5)
    w = np.linspace(0, 100, 11)
    assert np.all(np.asarray(sampler_transform(s, w)).imag == 0.0)


def test_asymmetric_transform_matches_mpmath_oscillatory():
    # Second, differently built quadrature oracle for the sign of the imaginary part.
    for l1, l2, w in ((0.5, 3.0, 2.0), (4.0, 0.2, 17.0)):
        ref = exponential_transform_osc(l1, l2, w)
        got = sampler_transform(TwoSidedExponential(l1, l2), w)
        assert abs(got - ref) <= 1e-13 * abs(ref)


def test_transform_sign_convention():
    # s_hat(omega) = int s(t) e^{-i omega t}: a sampler leaning to t > 0 has Im < 0.
    s = TwoSidedExponential(10.0, 0.5)
    assert sampler_transform(s, 1.0).imag < 0


def test_lorentzian_and_gaussian_transforms_by_quadrature():
    for s in (Lorentzian(0.7), Gaussian(1.3)):
        for w in (0.0, 0.5, 3.0):
            # Both are even, so the transform is twice the half-line cosine integral.
            if w:
                ref = 2 * quad(s.pdf, 0, np.inf, weight="cos", wvar=w)[0]
            else:
                ref = 2 * quad(s.pdf, 0, np.inf)[0]
            assert sampler_transform_real(s, w) == pytest.approx(ref, rel=1e-8, abs=1e-12)


@pytest.mark.parametrize("s", [TwoSidedExponential(0.4, 2.5), Lorentzian(1.7), Gaussian(0.8)])
def test_tail_mass_matches_quadrature(s):
    for window in (0.5, 3.0, 10.0):
        ref = quad(s.pdf, window, np.inf, epsabs=0, epsrel=1e-12)[0] + \
            quad(s.pdf, -np.inf, -window, epsabs=0, epsrel=1e-12)[0]
        assert s.tail_mass(window) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_rejects_nonpositive_rates(bad):
    with pytest.raises(ValueError):
        TwoSidedExponential(bad, 1.0)
    with pytest.raises(ValueError):
        Lorentzian(bad)
    with pytest.raises(ValueError):
        Gaussian(bad)


@settings(max_examples=20, deadline=None)
@given(rates, rates)
def test_property_unit_mass(l1, l2):
    assert abs(exponential_transform(l1, l2, 0.0) - 1.0) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(rates, rates, freqs)
def test_property_bounded_and_hermitian(l1, l2, w):
    s = TwoSidedExponential(l1, l2)
    z = sampler_transform(s, w)
    assert abs(z) <= 1.0 + 1e-15
    assert sampler_transform(s, -w) == pytest.approx(z.conjugate(), rel=1e-15, abs=0)
    assert sampler_transform_real(s, w) == pytest.approx(z.real, rel=1e-15)


@settings(max_examples=100, deadline=None)
@given(rates, rates, st.floats(min_value=0.0, max_value=1e6))
def test_property_real_part_positive_and_decreasing(l1, l2, w):
    s = TwoSidedExponential(l1, l2)
    r = sampler_transform_real(s, w)
    assert r > 0
    assert sampler_transform_real(s, 2 * w + 1.0) < r


@settings(max_examples=25, deadline=None)
@given(rates, rates, oracle_freqs)
def test_property_closed_form_matches_quadrature(l1, l2, w):
    ref = exponential_transform(l1, l2, w)
    assert abs(sampler_transform(TwoSidedExponential(l1, l2), w) - ref) <= 1e-12 * abs(ref)
