import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qineq import EnergyDensityModel, Lorentzian, TwoSidedExponential, run_lambda_sweep
from qineq.errors import DegenerateAbscissae
from qineq.sweep import default_grid, fit_log_slope, predicted_slope

DECADE_GRID = [1e4, 1e5, 1e6, 1e7, 1e8]


def test_exact_line():
    slope, intercept, stderr = fit_log_slope([(x, 2 * x + 1) for x in (0.0, 1.0, 2.0, 5.0)])
    assert (slope, intercept) == pytest.approx((2.0, 1.0), abs=1e-15)
    assert stderr == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
def test_property_line_recovery(c, d):
    xs = np.log(DECADE_GRID)
    slope, intercept, _ = fit_log_slope([(x, c * x + d) for x in xs])
    assert slope == pytest.approx(c, abs=1e-12 * max(1.0, abs(c), abs(d)))


def test_perturbed_point_moves_slope_within_bound():
    eps = 1e-3
    xs = np.arange(5.0)
    ys = -xs
    ys[4] += eps
    slope, _, _ = fit_log_slope(list(zip(xs, ys)))
    dx = xs - xs.mean()
    # One point moves the OLS slope by eps * dx_i / sum(dx^2).
    assert slope == pytest.approx(-1.0 + eps * dx[4] / (dx @ dx), rel=1e-12)


def test_fit_guards():
    with pytest.raises(DegenerateAbscissae):
        fit_log_slope([(0.0, 1.0), (1.0, 2.0)])
    with pytest.raises(DegenerateAbscissae):
        fit_log_slope([(0.0, 1.0), (0.0, 2.0), (1.0, 3.0)])


def test_reference_sweep():
    base = EnergyDensityModel.tuned(1.0, 1.0, 100.0, 1e8)
    report = run_lambda_sweep(base, DECADE_GRID)
    assert report.divergence_verdict and report.strictly_decreasing
    assert report.fitted_slope == pytest.approx(-7.916e-4, rel=0.01)
    assert report.slope_stderr <= 0.01 * abs(report.fitted_slope)
    assert report.predicted_slope == -1.0 / (128 * math.pi**2)


def test_two_points_report_without_fit():
    base = EnergyDensityModel.tuned(1.0, 1.0, 100.0, 1e8)
    report = run_lambda_sweep(base, [1e4, 1e5])
    assert not report.has_fit
    assert report.fitted_intercept is None and report.slope_stderr is None
    assert len(report.points) == 2 and not report.divergence_verdict


def test_short_sweep_gets_no_verdict():
    # Three decades only: the fit runs, but the verdict demands four.
    base = EnergyDensityModel.tuned(1.0, 1.0, 100.0, 1e8)
    report = run_lambda_sweep(base, [1e4, 1e5, 1e6, 1e7])
    assert report.has_fit and report.strictly_decreasing
    assert not report.divergence_verdict


def test_verdict_tolerance_is_applied():
    base = EnergyDensityModel.tuned(1.0, 1.0, 100.0, 1e8)
    assert not run_lambda_sweep(base, DECADE_GRID, tol=1e-14).divergence_verdict


def _slope_uncertainty(report):
    """Fit error that also covers systematic curvature, plus propagated quadrature error.

    The residual stderr assumes scatter; finite-W corrections bend the points
    smoothly instead, so the leave-one-out (jackknife) spread is taken when larger.
    """
    pts = [(math.log(p.Lambda), p.t00) for p in report.points]
    n = len(pts)
    loo = np.array([fit_log_slope(pts[:i] + pts[i + 1:])[0] for i in range(n)])
    jackknife = math.sqrt((n - 1) / n * float(np.sum((loo - loo.mean()) ** 2)))
    dx = np.array([x for x, _ in pts])
    dx -= dx.mean()
    propagated = float(np.abs(dx) @ [p.error_estimate for p in report.points]) / float(dx @ dx)
    return max(report.slope_stderr, jackknife) + propagated


def test_slope_independent_of_W():
    slopes = []
    for W in (1e2, 1e3):
        base = EnergyDensityModel.tuned(1.0, 1.0, W, 1e6 * W)
        r = run_lambda_sweep(base, default_grid(W))
        slopes.append((r.fitted_slope, _slope_uncertainty(r)))
    (s1, e1), (s2, e2) = slopes
    assert abs(s1 - s2) <= e1 + e2


def test_doubling_rates_scales_slope_by_sixteen():
    one = run_lambda_sweep(EnergyDensityModel.tuned(1.0, 1.0, 100.0, 1e8), DECADE_GRID).fitted_slope
    two = run_lambda_sweep(EnergyDensityModel.tuned(2.0, 2.0, 100.0, 1e8), DECADE_GRID).fitted_slope
    assert two / one == pytest.approx(16.0, rel=0.03)


def test_parallel_sweep_is_bit_identical():
    base = EnergyDensityModel.tuned(1.0, 3.0, 100.0, 1e8)
    assert run_lambda_sweep(base, DECADE_GRID, workers=4) == run_lambda_sweep(base, DECADE_GRID)


@pytest.mark.parametrize("grid", [[], [1e5, 1e4], [50.0, 1e4], [1e4, 1e4]])
def test_bad_grids(grid):
    with pytest.raises(ValueError):
        run_lambda_sweep(EnergyDensityModel.tuned(1.0, 1.0, 100.0, 1e8), grid)


def test_default_grid():
    assert default_grid(100.0) == pytest.approx([1e4, 1e5, 1e6, 1e7, 1e8], rel=1e-15)


def test_predicted_slope_only_for_exponential():
    assert predicted_slope(TwoSidedExponential(2.0, 3.0)) == pytest.approx(-36 / (128 * math.pi**2))
    assert predicted_slope(Lorentzian(1.0)) is None
