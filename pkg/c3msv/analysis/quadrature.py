"""
Tensor-product quadrature for Gaussian expectations E[g(f)], f ~ N(0, C).

The coordinates are whitened with the eigendecomposition of C (f = U sqrt(L) z) so that the grid
is the same square [-h, h]^k in every problem. The trapezoid rule is used per axis and the tensor
weights are built with ``numpy.einsum``. ``refine`` doubles the number of points per axis until two
successive estimates agree to the requested tolerance.
"""

from __future__ import division

import logging
import math

import numpy as np
from monty.json import MSONable

from c3msv.errors import ConfigError, NonConvergenceError
from c3msv.utils import DEFAULTS

_log = logging.getLogger(__name__)

_EINSUM_AXES = 'abcdef'


class QuadratureSpec(MSONable):
    """Grid settings for the negativity integrals.

    Parameters
    ----------
    half_width : float
        Grid half width in whitened standard deviations.
    points_per_dim : int
        Starting number of points per axis, at least 16.
    tol : float
        Refinement stops once successive estimates differ by less than ``tol``.
    max_refinements : int
        Number of doublings allowed before giving up.
    """

    def __init__(self, half_width=None, points_per_dim=None, tol=None, max_refinements=None):
        self.half_width = float(DEFAULTS['half_width'] if half_width is None else half_width)
        self.points_per_dim = int(DEFAULTS['points_per_dim'] if points_per_dim is None else points_per_dim)
        self.tol = float(DEFAULTS['quad_tol'] if tol is None else tol)
        self.max_refinements = int(DEFAULTS['max_refinements'] if max_refinements is None else max_refinements)
        if self.points_per_dim < 16:
            raise ConfigError('Need at least 16 points per dimension, got {}'.format(self.points_per_dim))
        if not self.tol > 0:
            raise ConfigError('Quadrature tolerance must be positive, got {}'.format(self.tol))
        if not self.half_width > 0:
            raise ConfigError('Grid half width must be positive, got {}'.format(self.half_width))
        if self.max_refinements < 0:
            raise ConfigError('max_refinements must be nonnegative, got {}'.format(self.max_refinements))

    def tail_bound(self, degree=4):
        """Rough bound on the mass of |z|^degree e^{-z^2/2} beyond the grid edge, per axis."""
        h = self.half_width
        return math.sqrt(2/math.pi)*h**(degree - 1)*math.exp(-h*h/2)

    def __repr__(self):
        return 'QuadratureSpec(half_width={}, points_per_dim={}, tol={}, max_refinements={})'.format(
            self.half_width, self.points_per_dim, self.tol, self.max_refinements)


class QuadratureResult(MSONable):
    """Converged estimate plus the bookkeeping written to the CLI output."""

    def __init__(self, value, estimates, points_per_dim, refinements):
        self.value = float(value)
        self.estimates = [float(e) for e in estimates]
        self.points_per_dim = int(points_per_dim)
        self.refinements = int(refinements)

    @property
    def last_delta(self):
        if len(self.estimates) < 2:
            return float('nan')
        return abs(self.estimates[-1] - self.estimates[-2])

    def __repr__(self):
        return 'QuadratureResult(value={:.12g}, points_per_dim={}, refinements={})'.format(
            self.value, self.points_per_dim, self.refinements)


def normal_trapezoid_rule(points, half_width):
    """Nodes and weights on [-h, h] for the standard normal measure.

    Returns
    -------
    (numpy.ndarray, numpy.ndarray)
        ``z`` and ``w`` with sum(w) within the truncated tail mass of 1.
    """
    z = np.linspace(-half_width, half_width, points)
    dz = z[1] - z[0]
    w = np.full(points, dz)
    w[0] = w[-1] = dz/2
    w *= np.exp(-z*z/2)/math.sqrt(2*math.pi)
    return z, w


def whitening(cov):
    """Matrix L with L L^T = cov, built from the eigendecomposition of ``cov``.

    Directions with a vanishing eigenvalue are kept with zero scale, so degenerate feature
    distributions (a feature that is identically zero) are handled on the same grid.
    """
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    evals, evecs = np.linalg.eigh((cov + cov.T)/2)
    scale = np.abs(evals).max() if evals.size else 0.0
    if evals.min() < -1e-10*max(scale, 1.0):
        raise ConfigError('Feature covariance is not positive semidefinite (min eigenvalue {:.3e})'.format(evals.min()))
    return evecs*np.sqrt(np.clip(evals, 0, None))


def gaussian_expectation(func, cov, points, half_width):
    """E[func(f)] for f ~ N(0, cov) on a ``points``-per-axis tensor trapezoid grid.

    Parameters
    ----------
    func : callable
        Receives an array of shape (k, points, ..., points) holding the feature values and returns
        an array of shape (points, ..., points).
    cov : array_like
        k x k covariance, k <= 6.
    points : int
    half_width : float

    Returns
    -------
    float
    """
    lower = whitening(cov)
    dim = lower.shape[0]
    z, w = normal_trapezoid_rule(points, half_width)
    axes = np.meshgrid(*([z]*dim), indexing='ij')
    grid_z = np.stack(axes)
    features = np.einsum('ij,j...->i...', lower, grid_z)
    subscripts = ','.join(_EINSUM_AXES[i] for i in range(dim)) + '->' + _EINSUM_AXES[:dim]
    weights = np.einsum(subscripts, *([w]*dim))
    # numpy's pairwise summation keeps the result independent of how the grid is chunked
    return float(np.sum(weights*func(features)))


def refine(estimate, spec, label='integral'):
    """Run ``estimate(points)`` with doubling ``points`` until successive values agree.

    Parameters
    ----------
    estimate : callable
        Maps a number of points per axis to a float.
    spec : QuadratureSpec
    label : str
        Used in log records and in the error message.

    Returns
    -------
    QuadratureResult

    Raises
    ------
    NonConvergenceError
        When ``spec.max_refinements`` doublings do not reach ``spec.tol``; carries the last two estimates.
    """
    points = spec.points_per_dim
    estimates = [estimate(points)]
    _log.debug('%s: %d points/dim -> %.12g', label, points, estimates[-1])
    for refinement in range(1, spec.max_refinements + 1):
        points *= 2
        estimates.append(estimate(points))
        delta = abs(estimates[-1] - estimates[-2])
        _log.debug('%s: %d points/dim -> %.12g (delta %.3e)', label, points, estimates[-1], delta)
        if delta < spec.tol:
            return QuadratureResult(estimates[-1], estimates, points, refinement)
    raise NonConvergenceError('{} did not converge to {:g} after {} refinements (last estimates {})'.format(
        label, spec.tol, spec.max_refinements, estimates[-2:]), estimates=estimates[-2:])
