"""
The squeezing module holds the parameter set of the coupled three-mode squeezed vacuum.

The state is generated from vacuum by a three-mode squeezer with complex couplings
xi_1 = r_1 e^{i theta_1} (modes 1, 2) and xi_2 = r_2 e^{i theta_2} (modes 2, 3). It is
parametrized here by the total squeezing r and the split angle phi, with r_1 = r cos(phi) and
r_2 = r sin(phi). Mode 2 is the central mode coupled to both outer modes.
"""

from __future__ import division

import math
from collections import namedtuple

import numpy as np
from monty.json import MSONable

from c3msv.errors import ConfigError

__author__ = 'Brandon Bocklund'


MeanPhotonNumbers = namedtuple('MeanPhotonNumbers', ['n1', 'n2', 'n3', 'n_total'])


class SqueezingConfig(MSONable):
    """Parameters (r, phi, theta1, theta2) of a coupled three-mode squeezed vacuum.

    Parameters
    ----------
    r : float
        Total squeezing magnitude, r >= 0.
    phi : float
        Split angle in [0, pi/2]. phi = 0 leaves mode 3 in vacuum, phi = pi/2 leaves mode 1 in vacuum.
    theta1 : float
        Phase of the coupling between modes 1 and 2.
    theta2 : float
        Phase of the coupling between modes 2 and 3.
    """

    def __init__(self, r, phi, theta1=0.0, theta2=0.0):
        r, phi = float(r), float(phi)
        if not np.isfinite(r) or r < 0:
            raise ConfigError('Squeezing r must be finite and nonnegative, got {}'.format(r))
        # tolerate round-off from k*pi/n arithmetic at the ends of the range
        if -1e-12 < phi < 0:
            phi = 0.0
        elif math.pi/2 < phi < math.pi/2 + 1e-12:
            phi = math.pi/2
        if not 0 <= phi <= math.pi/2:
            raise ConfigError('Split angle phi must lie in [0, pi/2], got {}'.format(phi))
        self.r = r
        self.phi = phi
        self.theta1 = float(theta1) % (2*math.pi)
        self.theta2 = float(theta2) % (2*math.pi)

    @classmethod
    def from_nbar(cls, nbar_total, phi, theta1=0.0, theta2=0.0):
        """Construct from the total mean photon number n_T = 2 sinh^2 r."""
        nbar_total = float(nbar_total)
        if not np.isfinite(nbar_total) or nbar_total < 0:
            raise ConfigError('Total mean photon number must be nonnegative, got {}'.format(nbar_total))
        return cls(math.asinh(math.sqrt(nbar_total/2)), phi, theta1, theta2)

    def with_phi(self, phi):
        return SqueezingConfig(self.r, phi, self.theta1, self.theta2)

    def with_phases(self, theta1, theta2):
        return SqueezingConfig(self.r, self.phi, theta1, theta2)

    @property
    def c(self):
        return math.cosh(self.r)

    @property
    def s(self):
        return math.sinh(self.r)

    @property
    def epsilon1(self):
        return self.s*np.exp(1j*self.theta1)*math.cos(self.phi)

    @property
    def epsilon2(self):
        return self.s*np.exp(1j*self.theta2)*math.sin(self.phi)

    @property
    def r1(self):
        return self.r*math.cos(self.phi)

    @property
    def r2(self):
        return self.r*math.sin(self.phi)

    @property
    def nbar_total(self):
        return 2*self.s**2

    @property
    def omegas(self):
        """The recurring combinations (c^2 + s^2, c^2 - s^2 cos 2phi, c^2 + s^2 cos 2phi)."""
        c2, s2, cos2phi = self.c**2, self.s**2, math.cos(2*self.phi)
        return c2 + s2, c2 - s2*cos2phi, c2 + s2*cos2phi

    def __repr__(self):
        return 'SqueezingConfig(r={!r}, phi={!r}, theta1={!r}, theta2={!r})'.format(
            self.r, self.phi, self.theta1, self.theta2)

    def __eq__(self, other):
        if not isinstance(other, SqueezingConfig):
            return NotImplemented
        return (self.r, self.phi, self.theta1, self.theta2) == (other.r, other.phi, other.theta1, other.theta2)

    def __hash__(self):
        return hash((self.r, self.phi, self.theta1, self.theta2))


def mean_photon_numbers(cfg):
    """Mean photon numbers of the three modes.

    Parameters
    ----------
    cfg : SqueezingConfig

    Returns
    -------
    MeanPhotonNumbers
        (s^2 cos^2 phi, s^2, s^2 sin^2 phi, 2 s^2). Mode 2 always carries the photons of both
        outer modes.
    """
    s2 = cfg.s**2
    n1 = s2*math.cos(cfg.phi)**2
    n3 = s2*math.sin(cfg.phi)**2
    return MeanPhotonNumbers(n1, s2, n3, n1 + s2 + n3)
