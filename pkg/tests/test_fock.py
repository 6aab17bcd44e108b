"""
Tests of the Fock-basis state, photon subtraction and the numerical Wigner functions.
"""

import itertools
import math
import warnings

import numpy as np
import pytest
from scipy.special import factorial

from c3msv.errors import ConfigError, CutoffError, VacuumSubtractionError
from c3msv.gaussian.squeezing import SqueezingConfig
from c3msv.analysis.quadrature import QuadratureSpec
from c3msv.analysis.wigner import wigner_closed_form, negativity
from c3msv.analysis.fock import (FockState, DensityMatrix, auto_cutoff, truncation_defect, build_c3msv_fock,
                                 annihilate, subtract_and_reduce, displacement_matrix, wigner_from_density,
                                 negativity_oracle)

STANDARD_CFG = SqueezingConfig.from_nbar(3, math.pi/8)


@pytest.fixture(scope='module')
def standard_state():
    return build_c3msv_fock(STANDARD_CFG, cutoff=40)


def test_vacuum_state():
    """r = 0 puts all weight on |0, 0, 0>."""
    state = build_c3msv_fock(SqueezingConfig(0.0, 0.5), cutoff=3)
    psi = state.dense()
    assert psi[0, 0, 0] == pytest.approx(1)
    assert np.sum(np.abs(psi)**2) == pytest.approx(1)


def test_phi_zero_is_a_two_mode_squeezed_vacuum():
    """|psi> = sum (-tanh r)^n / cosh r |n, n, 0>."""
    cfg = SqueezingConfig(0.7, 0.0)
    state = build_c3msv_fock(cfg, cutoff=30)
    n = np.arange(31)
    assert np.allclose(state.amplitudes[:, 0], (-math.tanh(0.7))**n/math.cosh(0.7))
    assert np.allclose(state.amplitudes[:, 1:], 0)


def test_only_the_photon_number_slice_is_populated():
    """Only entries with n2 = n1 + n3 are nonzero."""
    psi = build_c3msv_fock(STANDARD_CFG, cutoff=12, budget=1e-2).dense()
    n1, n2, n3 = np.indices(psi.shape)
    assert np.allclose(psi[n2 != n1 + n3], 0)


def test_truncation_defect_matches_the_missing_norm():
    """The stored defect equals tanh(r)^(2(N + 1))."""
    state = build_c3msv_fock(STANDARD_CFG, cutoff=25, budget=1e-3)
    assert state.truncation_defect == pytest.approx(truncation_defect(STANDARD_CFG, 25), rel=1e-6)
    assert FockState.from_dict(state.as_dict()).cutoff == 25


def test_auto_cutoff_is_the_smallest_within_budget():
    """One photon less would exceed the defect budget."""
    cutoff = auto_cutoff(STANDARD_CFG, 1e-8)
    assert truncation_defect(STANDARD_CFG, cutoff) < 1e-8
    assert truncation_defect(STANDARD_CFG, cutoff - 1) >= 1e-8
    assert auto_cutoff(SqueezingConfig(0.0, 0.3)) == 1
    with pytest.raises(ConfigError):
        auto_cutoff(STANDARD_CFG, 2.0)


def test_cutoff_below_the_budget_raises():
    """Too small an explicit cutoff is refused."""
    with pytest.raises(CutoffError):
        build_c3msv_fock(STANDARD_CFG, cutoff=5)
    with pytest.raises(ConfigError):
        build_c3msv_fock(STANDARD_CFG, cutoff=0, budget=0.99)


def test_annihilate():
    """a|n> = sqrt(n)|n - 1>, and a^2 |1> = 0."""
    psi = np.zeros((4, 2), dtype=complex)
    psi[3, 1] = 1
    lowered = annihilate(psi, 0)
    assert lowered[2, 1] == pytest.approx(math.sqrt(3))
    assert annihilate(psi, 0, power=2)[1, 1] == pytest.approx(math.sqrt(6))
    assert np.allclose(annihilate(psi, 1, power=2), 0)


def test_density_matrix_validation():
    """Wrong shape, trace or a negative eigenvalue is rejected."""
    with pytest.raises(ConfigError):
        DensityMatrix(np.eye(3), (1,), 2)
    with pytest.raises(ConfigError):
        DensityMatrix(np.diag([1.5, -0.5]), (1,), 1)
    with pytest.raises(ConfigError):
        DensityMatrix(np.eye(2)/2, (1, 2), 1)
    rho = DensityMatrix(np.diag([0.5, 0.5]), (2,), 1)
    assert rho.purity() == pytest.approx(0.5)
    assert DensityMatrix.from_dict(rho.as_dict()).modes == (2,)


def test_measured_normalization_matches_the_published_one():
    """1 / ||a ... |psi>||^2 agrees with the analytic prefactor."""
    state = build_c3msv_fock(STANDARD_CFG, budget=1e-14)
    for tag in ('1a|2', '2a|1', '1a3a|2', '2a3a|1'):
        assert subtract_and_reduce(state, tag).prefactor_mismatch < 1e-6


def test_reduced_state_is_physical(standard_state):
    """The two-mode reduced state of 1a|23 is a valid density matrix."""
    rho = subtract_and_reduce(standard_state, '1a|23').density
    assert rho.modes == (2, 3)
    assert np.trace(rho.entries) == pytest.approx(1)
    assert rho.validate() is rho


@pytest.mark.parametrize('tag', ['1a|2', '1a|3', '3a|1', '3a|2', '2a|1', '2a|3'])
def test_single_kept_mode_schemes_reduce_to_one_mode(tag):
    """The unnamed third mode is traced out and a one-mode density matrix remains."""
    state = build_c3msv_fock(SqueezingConfig.from_nbar(1, math.pi/8))
    result = subtract_and_reduce(state, tag)
    assert result.density.modes == (int(tag[-1]),)
    assert result.density.entries.shape == (state.cutoff + 1, state.cutoff + 1)
    assert np.trace(result.density.entries) == pytest.approx(1)
    assert result.prefactor_mismatch < 1e-5


def test_subtracting_from_a_vacuum_mode_raises():
    """At phi = 0 mode 3 is empty and cannot lose a photon."""
    state = build_c3msv_fock(SqueezingConfig.from_nbar(3, 0.0), cutoff=40)
    with pytest.raises(VacuumSubtractionError):
        subtract_and_reduce(state, '3a|12')


def test_displacement_matrix():
    """D(0) is the identity, D(alpha)|0> is coherent and the columns stay orthonormal."""
    assert np.allclose(displacement_matrix(0, 6), np.eye(7))
    alpha = 0.4 - 0.3j
    column = displacement_matrix(alpha, 30)[:, 0]
    m = np.arange(31)
    coherent = np.exp(-abs(alpha)**2/2)*alpha**m/np.sqrt(factorial(m))
    assert np.allclose(column, coherent)
    columns = displacement_matrix(alpha, 60)[:, :30]
    assert np.allclose(columns.conj().T.dot(columns), np.eye(30), atol=1e-8)


def test_wigner_of_number_states():
    """W_vacuum(0) = 2/pi and W_|1>(0) = -2/pi."""
    vacuum = DensityMatrix(np.diag([1.0, 0, 0, 0, 0]), (1,), 4)
    single = DensityMatrix(np.diag([0, 1.0, 0, 0, 0]), (1,), 4)
    assert float(wigner_from_density(vacuum, 0)) == pytest.approx(2/math.pi)
    assert float(wigner_from_density(single, 0)) == pytest.approx(-2/math.pi)
    assert float(wigner_from_density(vacuum, 0.5)) == pytest.approx(2/math.pi*math.exp(-0.5))


def test_wigner_argument_count():
    """One phase-space argument per mode, and no unknown keywords."""
    vacuum = DensityMatrix(np.diag([1.0, 0]), (1,), 1)
    with pytest.raises(ConfigError):
        wigner_from_density(vacuum, 0, 0)
    with pytest.raises(TypeError):
        wigner_from_density(vacuum, 0, grid=True)


def test_points_far_out_warn():
    """Points beyond the reliable radius of the cutoff trigger a warning."""
    vacuum = DensityMatrix(np.diag([1.0, 0, 0, 0, 0]), (1,), 4)
    with pytest.warns(UserWarning):
        wigner_from_density(vacuum, 3.0)


@pytest.mark.parametrize('tag', ['1a|2', '1a3a|2', '2a|1', '2a3a|1'])
def test_single_mode_wigner_agrees_with_the_closed_form(standard_state, tag):
    """Displaced parity on the Fock state reproduces the closed form on a 7 x 7 grid."""
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        rho = subtract_and_reduce(standard_state, tag).density
    analytic = wigner_closed_form(STANDARD_CFG, tag)
    x, p = np.meshgrid(np.linspace(-2, 2, 7), np.linspace(-2, 2, 7))
    betas = (x + 1j*p)/math.sqrt(2)
    assert np.allclose(wigner_from_density(rho, betas, warn=False), analytic(betas), atol=1e-5)


def test_two_mode_wigner_agrees_with_the_closed_form():
    """Displaced parity reproduces the two-mode closed form of 1a|23."""
    state = build_c3msv_fock(STANDARD_CFG, cutoff=30, budget=1e-6)
    rho = subtract_and_reduce(state, '1a|23').density
    analytic = wigner_closed_form(STANDARD_CFG, '1a|23')
    beta2 = np.array([0, 0.3, -0.5j, 0.4 + 0.2j])
    beta3 = np.array([0, -0.2, 0.1j, 0.5])
    assert np.allclose(wigner_from_density(rho, beta2, beta3, warn=False), analytic(beta2, beta3), atol=1e-5)


def test_two_mode_wigner_on_a_product_grid():
    """Every combination of per-mode points is evaluated once per mode and matches the closed form."""
    state = build_c3msv_fock(STANDARD_CFG, cutoff=30, budget=1e-6)
    rho = subtract_and_reduce(state, '1a|23').density
    analytic = wigner_closed_form(STANDARD_CFG, '1a|23')
    points = np.array(list(itertools.product(np.linspace(-1, 1, 3), repeat=4)))
    beta2 = (points[:, 0] + 1j*points[:, 1])/math.sqrt(2)
    beta3 = (points[:, 2] + 1j*points[:, 3])/math.sqrt(2)
    values = wigner_from_density(rho, beta2, beta3, warn=False)
    assert values.shape == (81,)
    assert np.allclose(values, analytic(beta2, beta3), atol=1e-5)


def test_single_mode_oracle_negativity(standard_state):
    """The Fock-basis negativity of 1a|2 matches the closed form."""
    rho = subtract_and_reduce(standard_state, '1a|2').density
    oracle = negativity_oracle(rho, QuadratureSpec(half_width=6.0, points_per_dim=64, tol=1e-4, max_refinements=3))
    assert oracle.value == pytest.approx(negativity(STANDARD_CFG, '1a|2'), abs=2e-3)


@pytest.mark.slow
def test_two_mode_oracle_negativity():
    """The Fock-basis negativity of 2a|13 matches the closed form."""
    rho = subtract_and_reduce(build_c3msv_fock(STANDARD_CFG, cutoff=30, budget=1e-6), '2a|13').density
    oracle = negativity_oracle(rho, QuadratureSpec(half_width=6.0, points_per_dim=32, tol=2e-3, max_refinements=1))
    assert oracle.value == pytest.approx(negativity(STANDARD_CFG, '2a|13'), abs=2e-3)
