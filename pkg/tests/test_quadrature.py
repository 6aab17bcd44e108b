"""
Tests of the tensor-product Gaussian quadrature.
"""

import numpy as np
import pytest

from c3msv.errors import ConfigError, NonConvergenceError
from c3msv.analysis.quadrature import (QuadratureSpec, QuadratureResult, normal_trapezoid_rule, whitening,
                                       gaussian_expectation, refine)


def test_spec_defaults_and_validation():
    """Defaults come from the package defaults; bad settings raise."""
    spec = QuadratureSpec()
    assert spec.half_width == 8.0
    assert spec.points_per_dim == 96
    assert spec.tol == 1e-5
    assert spec.tail_bound() < 1e-10
    assert QuadratureSpec.from_dict(spec.as_dict()).points_per_dim == 96
    with pytest.raises(ConfigError):
        QuadratureSpec(points_per_dim=8)
    with pytest.raises(ConfigError):
        QuadratureSpec(tol=0)
    with pytest.raises(ConfigError):
        QuadratureSpec(half_width=-1)


def test_trapezoid_weights_carry_the_normal_density():
    """The weights integrate 1 and z^2 against the standard normal."""
    z, w = normal_trapezoid_rule(64, 8.0)
    assert z[0] == -8.0 and z[-1] == 8.0
    assert np.sum(w) == pytest.approx(1, abs=1e-12)
    assert np.sum(w*z*z) == pytest.approx(1, abs=1e-12)


def test_whitening_reproduces_the_covariance():
    """L L^T = C, a zero block maps to zero and an indefinite matrix raises."""
    cov = np.array([[2.0, 0.5], [0.5, 1.0]])
    lower = whitening(cov)
    assert np.allclose(lower.dot(lower.T), cov)
    assert np.allclose(whitening([[0.0]]), 0)
    with pytest.raises(ConfigError):
        whitening([[1.0, 2.0], [2.0, 1.0]])


def test_gaussian_moments():
    """E[f0^2] = C00, E[f0 f1] = C01 and E[f0^2 f1^2] = C00 C11 + 2 C01^2."""
    cov = np.array([[1.0, 0.5], [0.5, 2.0]])
    assert gaussian_expectation(lambda f: f[0]**2, cov, 64, 8.0) == pytest.approx(1.0, abs=1e-10)
    assert gaussian_expectation(lambda f: f[0]*f[1], cov, 64, 8.0) == pytest.approx(0.5, abs=1e-10)
    assert gaussian_expectation(lambda f: f[0]**2*f[1]**2, cov, 64, 8.0) == pytest.approx(2.5, abs=1e-9)
    assert gaussian_expectation(lambda f: f[0]**2, [[4.0]], 32, 8.0) == pytest.approx(4.0, abs=1e-10)


def test_absolute_value_converges_under_refinement():
    """E|f| = sqrt(2/pi) needs refinement because of the kink at 0."""
    spec = QuadratureSpec(points_per_dim=16, tol=1e-4, max_refinements=8)
    result = refine(lambda points: gaussian_expectation(lambda f: np.abs(f[0]), [[1.0]], points, 8.0), spec)
    assert result.value == pytest.approx(np.sqrt(2/np.pi), abs=1e-3)
    assert result.refinements >= 1
    assert result.last_delta < 1e-4


def test_refine_stops_at_the_first_agreement():
    """A constant integrand converges after one doubling."""
    result = refine(lambda points: 1.0, QuadratureSpec(points_per_dim=16))
    assert result.value == 1.0
    assert result.refinements == 1
    assert result.points_per_dim == 32


def test_refine_reports_the_last_two_estimates():
    """The error carries the two estimates that failed to agree."""
    with pytest.raises(NonConvergenceError) as excinfo:
        refine(lambda points: float(points), QuadratureSpec(points_per_dim=16, max_refinements=2))
    assert excinfo.value.estimates == (32.0, 64.0)


def test_result_without_refinement_has_no_delta():
    """A single estimate has no successive difference."""
    assert np.isnan(QuadratureResult(1.0, [1.0], 16, 0).last_delta)
