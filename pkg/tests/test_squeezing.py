"""
Tests of the squeezing parameter set.
"""

import math

import pytest

from c3msv.errors import ConfigError
from c3msv.gaussian.squeezing import SqueezingConfig, mean_photon_numbers


def test_from_nbar_sets_the_total_photon_number():
    """n_T = 2 sinh^2 r, so n_T = 2 gives s = 1 and c^2 = 2."""
    cfg = SqueezingConfig.from_nbar(2, math.pi/4)
    assert cfg.s == pytest.approx(1)
    assert cfg.c**2 == pytest.approx(2)
    assert cfg.nbar_total == pytest.approx(2)


def test_mean_photon_numbers_split_with_phi():
    """Outer modes share s^2 as cos^2 phi and sin^2 phi; the central mode carries s^2."""
    numbers = mean_photon_numbers(SqueezingConfig.from_nbar(2, math.pi/4))
    assert numbers.n1 == pytest.approx(0.5)
    assert numbers.n2 == pytest.approx(1)
    assert numbers.n3 == pytest.approx(0.5)
    assert numbers.n_total == pytest.approx(2)


def test_phi_zero_leaves_mode_three_empty():
    """At phi = 0 all the squeezing goes into modes 1 and 2."""
    cfg = SqueezingConfig(0.8, 0.0)
    assert cfg.epsilon2 == 0
    assert mean_photon_numbers(cfg).n3 == 0
    assert cfg.r1 == pytest.approx(0.8)


def test_omegas_at_the_bisymmetric_point():
    """At phi = pi/4 both outer combinations reduce to c^2."""
    cfg = SqueezingConfig.from_nbar(2, math.pi/4)
    omega0, omega1, omega2 = cfg.omegas
    assert omega0 == pytest.approx(3)
    assert omega1 == pytest.approx(2)
    assert omega2 == pytest.approx(2)


def test_phases_enter_the_couplings():
    """theta_1 and theta_2 only rotate the couplings."""
    cfg = SqueezingConfig(1.0, math.pi/3, theta1=0.5, theta2=-1.0)
    assert abs(cfg.epsilon1) == pytest.approx(cfg.s*math.cos(math.pi/3))
    assert cfg.theta2 == pytest.approx(2*math.pi - 1.0)
    assert cfg.with_phases(0, 0).epsilon2.imag == pytest.approx(0)


@pytest.mark.parametrize('r, phi', [(-0.1, 0.2), (float('nan'), 0.2), (0.5, -0.3), (0.5, 2.0)])
def test_invalid_parameters_raise(r, phi):
    """Negative or non-finite r and phi outside [0, pi/2] are rejected."""
    with pytest.raises(ConfigError):
        SqueezingConfig(r, phi)


def test_round_off_at_the_ends_of_phi_is_tolerated():
    """k pi/n arithmetic may overshoot pi/2 by an ulp."""
    assert SqueezingConfig(0.5, 4*(math.pi/8)).phi == pytest.approx(math.pi/2)
    with pytest.raises(ConfigError):
        SqueezingConfig.from_nbar(-1, 0.2)


def test_config_serialization():
    """as_dict/from_dict should give back an equal configuration."""
    cfg = SqueezingConfig(0.7, 0.3, 0.1, 0.2)
    assert SqueezingConfig.from_dict(cfg.as_dict()) == cfg
    assert cfg.with_phi(0.5).phi == 0.5
