"""
Decoherence of the coupled three-mode squeezed vacuum in three independent thermal reservoirs.

Each mode j decays at rate gamma_j into a reservoir with mean occupation n_Rj. The normally ordered
moments obey

    <a_j^dag a_j>(t) = e^{-2 gamma_j t} <a_j^dag a_j>(0) + n_Rj (1 - e^{-2 gamma_j t})
    <a_j^dag a_k>(t) = e^{-(gamma_j + gamma_k) t} <a_j^dag a_k>(0)          (j != k)
    <a_j a_k>(t)     = e^{-(gamma_j + gamma_k) t} <a_j a_k>(0)

which gives the ``'moment'`` covariance matrix. The ``'printed'`` variant keeps the initial
occupation undamped on the diagonal; it is kept to compare against the sudden-death anchors.
"""

from __future__ import division

import logging
import math

import numpy as np
from monty.json import MSONable
from scipy.optimize import brentq

from c3msv.errors import ConfigError
from c3msv.gaussian.covariance import (CovarianceMatrix, c3msv_covariance, c3msv_moment_matrices,
                                       cm_from_moments, sub_cm, schur_complement, symplectic_eigenvalues,
                                       Partition)
from c3msv.gaussian.squeezing import SqueezingConfig, mean_photon_numbers
from c3msv.analysis.steering import get_case, gaussian_steering
from c3msv.utils import DEFAULTS, check_monotone

_log = logging.getLogger(__name__)

DECAY_VARIANTS = ('moment', 'printed')

# published G^{23->1} death times at n_T = 3, phi = pi/8, equal loss rates, keyed by n_R
ANCHOR_DEATH_TIMES = {0.0: 0.346574, 0.5: 0.11903, 1.0: 0.0729227}


class ChannelParams(MSONable):
    """Loss rates and reservoir occupations of the three modes.

    Parameters
    ----------
    gamma : [float]
        Three loss rates, >= 0.
    n_r : [float]
        Three reservoir mean occupations, >= 0.
    """

    def __init__(self, gamma, n_r):
        gamma = np.array(gamma, dtype=float).reshape(-1)
        n_r = np.array(n_r, dtype=float).reshape(-1)
        if gamma.shape != (3,) or n_r.shape != (3,):
            raise ConfigError('Need three loss rates and three reservoir occupations, got {} and {}'.format(
                gamma.tolist(), n_r.tolist()))
        if not (np.all(np.isfinite(gamma)) and np.all(np.isfinite(n_r))) or gamma.min() < 0 or n_r.min() < 0:
            raise ConfigError('Loss rates and occupations must be finite and nonnegative, got {} and {}'.format(
                gamma.tolist(), n_r.tolist()))
        self.gamma = tuple(gamma.tolist())
        self.n_r = tuple(n_r.tolist())

    @classmethod
    def uniform(cls, gamma, n_r):
        return cls([gamma]*3, [n_r]*3)

    def __repr__(self):
        return 'ChannelParams(gamma={}, n_r={})'.format(self.gamma, self.n_r)


class SteeringTrajectory(MSONable):
    """Steering of one case sampled on a time grid."""

    def __init__(self, times, values, case, channel):
        self.times = [float(t) for t in times]
        self.values = [float(v) for v in values]
        self.case = case
        self.channel = channel


def _check_variant(variant):
    if variant not in DECAY_VARIANTS:
        raise ConfigError('Unknown decay variant "{}", use one of {}'.format(variant, DECAY_VARIANTS))


def evolve_cm(cfg, ch, t, variant='moment'):
    """Covariance matrix after evolving for time ``t`` in the reservoirs ``ch``.

    Parameters
    ----------
    cfg : SqueezingConfig
    ch : ChannelParams
    t : float
        Time >= 0, in the inverse units of ``ch.gamma``.
    variant : str
        ``'moment'`` (default) or ``'printed'``, see the module docstring.

    Returns
    -------
    CovarianceMatrix
    """
    _check_variant(variant)
    t = float(t)
    if not t >= 0:
        raise ConfigError('Evolution time must be nonnegative, got {}'.format(t))
    gamma = np.array(ch.gamma)
    n_r = np.array(ch.n_r)
    v = c3msv_covariance(cfg).entries.copy()
    occupations = np.array(mean_photon_numbers(cfg)[:3])
    decay = np.exp(-2*gamma*t)
    for j in range(3):
        for k in range(3):
            if j == k:
                signal = occupations[j]*decay[j] if variant == 'moment' else occupations[j]
                v[2*j:2*j + 2, 2*j:2*j + 2] = (1 + 2*signal + 2*n_r[j]*(1 - decay[j]))*np.eye(2)
            else:
                v[2*j:2*j + 2, 2*k:2*k + 2] *= math.exp(-(gamma[j] + gamma[k])*t)
    return CovarianceMatrix(v)


def evolve_moments(n_matrix, m_matrix, ch, t):
    """Apply the reservoir damping laws to the moment matrices N and M for a time ``t``."""
    gamma = np.array(ch.gamma)
    n_r = np.array(ch.n_r)
    damping = np.exp(-np.add.outer(gamma, gamma)*t)
    n_new = damping*np.asarray(n_matrix, dtype=complex) + np.diag(n_r*(1 - np.exp(-2*gamma*t)))
    m_new = damping*np.asarray(m_matrix, dtype=complex)
    return n_new, m_new


def evolve_cm_from_moments(cfg, ch, t):
    """Same covariance matrix as ``evolve_cm(..., variant='moment')``, built through the moments."""
    n_matrix, m_matrix = evolve_moments(*c3msv_moment_matrices(cfg), ch=ch, t=t)
    return cm_from_moments(n_matrix, m_matrix)


def steering_vs_time(cfg, ch, case, time_grid, variant='moment'):
    """Steering of ``case`` at each time of an ascending grid.

    Returns
    -------
    SteeringTrajectory
    """
    case = get_case(case)
    times = check_monotone(time_grid, 'time grid')
    if times[0] < 0:
        raise ConfigError('Times must be nonnegative, got {}'.format(times[0]))
    values = [gaussian_steering(evolve_cm(cfg, ch, t, variant), case.partition).value for t in times]
    return SteeringTrajectory(times, values, case, ch)


def _steering_margin(cfg, ch, partition, variant):
    """1 - smallest symplectic eigenvalue of sigma_{B|A}(t); positive while A steers B."""
    def margin(t):
        cm = evolve_cm(cfg, ch, t, variant)
        cm_ab = sub_cm(cm, partition.modes)
        n_a = len(partition.party_a)
        sigma = schur_complement(cm_ab, Partition(range(n_a), range(n_a, len(partition.modes))))
        return 1 - min(symplectic_eigenvalues(sigma))
    return margin


def sudden_death_time(cfg, ch, case, tol=None, variant='moment', initial_span=None):
    """Time at which the steering of ``case`` first reaches zero.

    The bracket [0, T] starts at ``initial_span`` (default 1/gamma_max) and doubles until the
    steering is gone or T exceeds 1e4/gamma_max; the crossing of the smallest symplectic eigenvalue
    through 1 is then located with Brent's method.

    Parameters
    ----------
    cfg : SqueezingConfig
    ch : ChannelParams
    case : SteeringCase or str
    tol : float
        Time resolution, default ``DEFAULTS['bisection_tol']``.
    variant : str
        Decay variant passed to ``evolve_cm``.
    initial_span : float
        First bracket length.

    Returns
    -------
    float or None
        0.0 if there is no steering at t = 0, None if it survives the bracket cap.
    """
    case = get_case(case)
    if tol is None:
        tol = DEFAULTS['bisection_tol']
    if tol <= 0:
        raise ConfigError('Time resolution must be positive, got {}'.format(tol))
    margin = _steering_margin(cfg, ch, case.partition, variant)
    steering_tol = DEFAULTS['steering_tol']
    if margin(0.0) <= steering_tol:
        return 0.0
    gamma_max = max(ch.gamma)
    if gamma_max == 0:
        return None
    span = initial_span if initial_span is not None else 1/gamma_max
    cap = 1e4/gamma_max
    while margin(span) > steering_tol:
        span *= 2
        if span > cap:
            _log.info('%s still steerable at t=%g, no sudden death', case.label, span)
            return None
    root = brentq(lambda t: margin(t) - steering_tol, 0.0, span, xtol=tol/4)
    # step onto the side where the steering has vanished
    while margin(root) > steering_tol:
        root += tol/4
    _log.debug('sudden death of %s at t=%.12g (bracket %g)', case.label, root, span)
    return root


def sudden_death_table(cfg, n_r_values, case, gamma=1.0, tol=None, variant='moment'):
    """Sudden-death times for several reservoir occupations with equal loss rates on all modes."""
    return [(float(n_r), sudden_death_time(cfg, ChannelParams.uniform(gamma, n_r), case, tol, variant))
            for n_r in n_r_values]


def select_decay_variant(tol=1e-3):
    """Find which decay variant reproduces the published death times.

    Returns
    -------
    tuple
        (variant or None, {variant: [(n_r, t_star), ...]})
    """
    cfg = SqueezingConfig.from_nbar(3, math.pi/8)
    measured = {}
    chosen = None
    for variant in DECAY_VARIANTS:
        table = sudden_death_table(cfg, sorted(ANCHOR_DEATH_TIMES), '23->1', variant=variant)
        measured[variant] = table
        matches = all(t_star is not None and abs(t_star - ANCHOR_DEATH_TIMES[n_r]) < tol for n_r, t_star in table)
        if matches and chosen is None:
            chosen = variant
    return chosen, measured
