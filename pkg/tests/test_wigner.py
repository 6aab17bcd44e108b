"""
Tests of the closed-form Wigner functions and their negativity.
"""

import math

import numpy as np
import pytest

from c3msv.errors import ConfigError
from c3msv.gaussian.squeezing import SqueezingConfig
from c3msv.gaussian.covariance import CovarianceMatrix
from c3msv.analysis.schemes import SCHEME_TAGS, ZERO_NEGATIVITY_SCHEMES, PARTIAL_ZERO_NEGATIVITY_SCHEMES
from c3msv.analysis.wigner import (GaussPolyWigner, wigner_c3msv, c3msv_wigner, wigner_gaussian, wigner_closed_form,
                                   negativity, negativity_details, negativity_scan, additivity_report)

STANDARD_CFG = SqueezingConfig.from_nbar(3, math.pi/8)


def test_c3msv_wigner_of_the_vacuum():
    """With r = 0 every mode is in vacuum: W = (2/pi)^3 exp(-2 sum |beta_j|^2)."""
    cfg = SqueezingConfig(0.0, 0.4)
    assert wigner_c3msv(cfg, 0, 0, 0) == pytest.approx(8/math.pi**3)
    assert wigner_c3msv(cfg, 1, 0, 0) == pytest.approx(8/math.pi**3*math.exp(-2))


def test_c3msv_wigner_is_peaked_at_the_origin():
    """A pure Gaussian state has W(0) = (2/pi)^n."""
    assert wigner_c3msv(STANDARD_CFG, 0, 0, 0) == pytest.approx(8/math.pi**3)
    assert wigner_c3msv(STANDARD_CFG, 0.3j, 0.2, -0.1) < 8/math.pi**3
    assert c3msv_wigner(STANDARD_CFG).total() == pytest.approx(1, abs=1e-6)


def test_c3msv_wigner_broadcasts():
    """Array arguments broadcast against scalars."""
    values = wigner_c3msv(STANDARD_CFG, np.linspace(-1, 1, 7), 0.1, 0.2j)
    assert values.shape == (7,)
    assert np.all(values > 0)


def test_gaussian_wigner_of_the_vacuum_and_a_thermal_state():
    """W(0) = 2 / (pi (2n + 1)) for a thermal mode."""
    assert wigner_gaussian(np.eye(2))(0) == pytest.approx(2/math.pi)
    thermal = wigner_gaussian(CovarianceMatrix(3*np.eye(2)))
    assert thermal(0) == pytest.approx(2/(3*math.pi))
    assert thermal(1.0) == pytest.approx(2/(3*math.pi)*math.exp(-2/3))


@pytest.mark.parametrize('tag', SCHEME_TAGS)
def test_every_closed_form_is_normalized(tag):
    """Each remote Wigner function integrates to 1."""
    assert wigner_closed_form(STANDARD_CFG, tag).total() == pytest.approx(1, abs=1e-6)


def test_closed_form_kept_modes():
    """The Wigner function lives on the kept modes in ascending order."""
    assert wigner_closed_form(STANDARD_CFG, '1a|23').modes == (2, 3)
    assert wigner_closed_form(STANDARD_CFG, '2a|13').modes == (1, 3)
    assert wigner_closed_form(STANDARD_CFG, '1a3a|2').modes == (2,)
    assert wigner_closed_form(STANDARD_CFG, '2a3a|1').n_modes == 1


@pytest.mark.parametrize('tag, nbar, phi, target, tol', [
    ('1a|23', 3, 0.0, 0.04682, 1e-3),
    ('1a|23', 3, math.pi/2, 0.42614, 1e-3),
    ('3a|12', 3, 0.0, 0.42614, 1e-3),
    ('2a|13', 3, math.pi/8, 0.0468, 2e-3),
    ('1a3a|2', 3, math.pi/8, 0.0318528, 1e-3),
])
def test_negativity_anchors(tag, nbar, phi, target, tol):
    """Reference negativities at n_T = 3."""
    assert negativity(SqueezingConfig.from_nbar(nbar, phi), tag) == pytest.approx(target, abs=tol)


def test_single_mode_subtraction_from_mode_1_does_not_depend_on_phi():
    """N(1a|2) stays at the two-mode squeezed vacuum value for every splitting."""
    for phi in np.linspace(0, math.pi/2, 5):
        assert negativity(SqueezingConfig.from_nbar(3, phi), '1a|2') == pytest.approx(0.04682, abs=1e-3)


@pytest.mark.parametrize('tag', ZERO_NEGATIVITY_SCHEMES)
def test_nonnegative_schemes(tag):
    """These schemes have nonnegative Wigner functions at every phi."""
    for phi in (0.0, math.pi/8, math.pi/3, math.pi/2):
        assert negativity(SqueezingConfig.from_nbar(3, phi), tag) < 1e-5


def test_partially_nonnegative_schemes():
    """2a3|1 is nonnegative only for phi >= pi/4 and 12a|3 only for phi <= pi/4."""
    for tag, (lower, upper) in PARTIAL_ZERO_NEGATIVITY_SCHEMES.items():
        for phi in np.linspace(lower, upper, 3):
            assert negativity(SqueezingConfig.from_nbar(3, phi), tag) < 1e-5
    assert negativity(STANDARD_CFG, '2a3|1') > 1e-3
    assert negativity(STANDARD_CFG.with_phi(3*math.pi/8), '12a|3') > 1e-3


def test_shared_states_have_equal_negativity():
    """2a3|1 produces the same remote state as 2a|1."""
    assert negativity(STANDARD_CFG, '2a3|1') == pytest.approx(negativity(STANDARD_CFG, '2a|1'), abs=1e-9)


def test_central_subtraction_does_not_depend_on_phi():
    """1a3a|2 leaves mode 2 in a state that does not depend on the split."""
    values = [negativity(SqueezingConfig.from_nbar(3, phi), '1a3a|2') for phi in (0.0, 0.4, 1.2)]
    assert values == pytest.approx([values[0]]*3, abs=1e-9)


def test_phi_mirror_exchanges_the_outer_modes():
    """phi -> pi/2 - phi swaps modes 1 and 3 in the negativity."""
    cfg = SqueezingConfig.from_nbar(3, math.pi/5)
    mirror = cfg.with_phi(math.pi/2 - cfg.phi)
    assert negativity(cfg, '2a|1') == pytest.approx(negativity(mirror, '2a|3'), abs=1e-5)
    assert negativity(cfg, '1a|23') == pytest.approx(negativity(mirror, '3a|12'), abs=1e-5)
    assert negativity(cfg, '1a|3') == pytest.approx(negativity(mirror, '3a|1'), abs=1e-5)


def test_negativity_does_not_depend_on_the_phases():
    """theta_1 and theta_2 do not change any negativity."""
    rotated = STANDARD_CFG.with_phases(0.9, 2.1)
    for tag in ('1a|23', '2a|13', '2a|1'):
        assert negativity(rotated, tag) == pytest.approx(negativity(STANDARD_CFG, tag), abs=1e-6)


def test_remote_state_with_mode_1_in_vacuum():
    """At phi = pi/2 mode 1 is in vacuum and 2a3a|1 leaves it there."""
    wigner = wigner_closed_form(SqueezingConfig.from_nbar(3, math.pi/2), '2a3a|1')
    for beta in (0, 0.5, 0.3 + 0.4j):
        assert wigner(beta) == pytest.approx(2/math.pi*math.exp(-2*abs(beta)**2))


def test_negativity_details_report_convergence():
    """Refinement bookkeeping is reported; nonnegative states are clamped to 0."""
    result = negativity_details(wigner_closed_form(STANDARD_CFG, '1a|2'))
    assert result.refinements >= 1
    assert result.last_delta < 1e-5
    assert negativity_details(wigner_closed_form(STANDARD_CFG, '23a|1')).value == 0.0


def test_additivity_relations():
    """Subtraction on one outer mode is super-additive, on both outer modes sub-additive."""
    checks = additivity_report(STANDARD_CFG)
    assert [check.relation for check in checks] == ['>=', '>=', '>=', '<']
    assert all(check.holds for check in checks)


def test_negativity_scan():
    """Scans over phi and n_T, with grid and parameter validation."""
    rows = negativity_scan(STANDARD_CFG, '1a|23', [0.0, math.pi/4, math.pi/2])
    assert [phi for phi, _ in rows] == pytest.approx([0.0, math.pi/4, math.pi/2])
    assert rows[0][1].value == pytest.approx(0.04682, abs=1e-3)
    assert rows[-1][1].value == pytest.approx(0.42614, abs=1e-3)
    by_nbar = negativity_scan(STANDARD_CFG, '1a3a|2', [1.0, 3.0], parameter='nbar')
    assert by_nbar[1][1].value == pytest.approx(0.0318528, abs=1e-3)
    with pytest.raises(ConfigError):
        negativity_scan(STANDARD_CFG, '1a|2', [0.5, 0.1])
    with pytest.raises(ConfigError):
        negativity_scan(STANDARD_CFG, '1a|2', [0.1], parameter='theta1')


def test_gauss_poly_wigner_validation():
    """Non positive definite forms, mismatched shapes and wrong argument counts raise."""
    with pytest.raises(ConfigError):
        GaussPolyWigner(-np.eye(2), np.eye(2), [[1.0]], 1.0, (1,))
    with pytest.raises(ConfigError):
        GaussPolyWigner(np.eye(4), np.eye(2), [[1.0]], 1.0, (1, 2))
    wigner = wigner_gaussian(np.eye(2))
    with pytest.raises(ConfigError):
        wigner(0, 0)
