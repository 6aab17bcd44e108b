"""
Closed-form Wigner functions of the coupled three-mode squeezed vacuum and of the eighteen
remotely photon-subtracted states, and their Wigner negativity.

Every function handled here has the form

    W(beta) = norm * P(F^T b) * exp(-b^T M b),    b = (Re beta_1, Im beta_1, Re beta_2, ...)

with M positive definite and P a polynomial of degree <= 4 in two real linear features of b. The
negativity integral int |W| - 1 then reduces to a two-dimensional Gaussian expectation of |P|,
because the directions of b orthogonal to the features only contribute their Gaussian mass.
"""

from __future__ import division

import logging
import math
from collections import namedtuple

import numpy as np
from monty.json import MSONable
from numpy.polynomial.polynomial import polyval2d

from c3msv.errors import ConfigError
from c3msv.analysis.quadrature import QuadratureSpec, gaussian_expectation, refine
from c3msv.analysis.schemes import get_scheme
from c3msv.gaussian.covariance import CovarianceMatrix
from c3msv.gaussian.squeezing import SqueezingConfig, mean_photon_numbers
from c3msv.utils import check_monotone

_log = logging.getLogger(__name__)


class GaussPolyWigner(MSONable):
    """A Wigner function norm * P(F^T b) * exp(-b^T M b) on ``n_modes`` modes.

    Parameters
    ----------
    quad_form : array_like
        The 2n x 2n positive definite matrix M.
    features : array_like
        2n x 2 matrix F whose columns give the two polynomial variables.
    coeffs : array_like
        Coefficients of P in the ``numpy.polynomial.polynomial.polyval2d`` layout.
    norm_const : float
    modes : [int]
        1-based labels of the modes, in the order of ``b``.
    label : str
    """

    def __init__(self, quad_form, features, coeffs, norm_const, modes, label=''):
        self.quad_form = np.array(quad_form, dtype=float)
        self.features = np.array(features, dtype=float)
        self.coeffs = np.atleast_2d(np.array(coeffs, dtype=float))
        self.norm_const = float(norm_const)
        self.modes = tuple(int(m) for m in modes)
        self.label = label
        dim = 2*len(self.modes)
        if self.quad_form.shape != (dim, dim) or self.features.shape != (dim, 2):
            raise ConfigError('Quadratic form {} and features {} do not match {} modes'.format(
                self.quad_form.shape, self.features.shape, len(self.modes)))
        self.quad_form = (self.quad_form + self.quad_form.T)/2
        if np.linalg.eigvalsh(self.quad_form).min() <= 0:
            raise ConfigError('Quadratic form of {} is not positive definite'.format(label or 'Wigner function'))

    @property
    def n_modes(self):
        return len(self.modes)

    def __call__(self, *betas):
        """Evaluate at complex points, one array argument per mode (broadcast together)."""
        if len(betas) != self.n_modes:
            raise ConfigError('{} expects {} phase-space arguments, got {}'.format(
                self.label or 'Wigner function', self.n_modes, len(betas)))
        betas = np.broadcast_arrays(*[np.asarray(beta, dtype=complex) for beta in betas])
        b = np.stack([part for beta in betas for part in (beta.real, beta.imag)])
        exponent = np.einsum('i...,ij,j...->...', b, self.quad_form, b)
        f = np.einsum('ij,i...->j...', self.features, b)
        return self.norm_const*polyval2d(f[0], f[1], self.coeffs)*np.exp(-exponent)

    @property
    def gaussian_mass(self):
        """int exp(-b^T M b) d^{2n} b."""
        return math.pi**self.n_modes/math.sqrt(np.linalg.det(self.quad_form))

    @property
    def feature_covariance(self):
        """Covariance of F^T b when b is distributed as exp(-b^T M b)."""
        return self.features.T.dot(np.linalg.solve(2*self.quad_form, self.features))

    def expectation(self, func, points, half_width):
        """norm * mass * E[func(P(f))] on one grid."""
        def integrand(f):
            return func(polyval2d(f[0], f[1], self.coeffs))
        return self.norm_const*self.gaussian_mass*gaussian_expectation(
            integrand, self.feature_covariance, points, half_width)

    def total(self, quad=None):
        """int W, by the quadrature used for the negativity."""
        quad = quad or QuadratureSpec()
        return refine(lambda pts: self.expectation(lambda p: p, pts, quad.half_width), quad,
                      label='normalization of {}'.format(self.label)).value

    def __repr__(self):
        return 'GaussPolyWigner({}, modes={})'.format(self.label, self.modes)


class _QuadraticForm(object):
    """Accumulates b^T M b from terms written with complex phase-space variables."""

    def __init__(self, modes):
        self.index = {m: i for i, m in enumerate(modes)}
        self.matrix = np.zeros((2*len(modes), 2*len(modes)))

    def _add(self, i, j, value):
        self.matrix[i, j] += value/2
        self.matrix[j, i] += value/2

    def modulus(self, mode, weight):
        """weight * |beta_mode|^2"""
        k = 2*self.index[mode]
        self.matrix[k, k] += weight
        self.matrix[k + 1, k + 1] += weight

    def product(self, weight, z, mode_j, mode_k, conjugate_second=False):
        """weight * Re(z beta_j beta_k), or weight * Re(z beta_j beta_k^*)."""
        xj, yj = 2*self.index[mode_j], 2*self.index[mode_j] + 1
        xk, yk = 2*self.index[mode_k], 2*self.index[mode_k] + 1
        a, b = weight*z.real, weight*z.imag
        if conjugate_second:
            self._add(xj, xk, a)
            self._add(yj, yk, a)
            self._add(yj, xk, -b)
            self._add(xj, yk, b)
        else:
            self._add(xj, xk, a)
            self._add(yj, yk, -a)
            self._add(xj, yk, -b)
            self._add(yj, xk, -b)


def _linear_features(modes, terms):
    """F for the pair (Re v, Im v) with v = sum of a * beta_m or a * beta_m^*.

    ``terms`` is a list of (a, mode, conjugate).
    """
    index = {m: i for i, m in enumerate(modes)}
    features = np.zeros((2*len(modes), 2))
    for a, mode, conjugate in terms:
        a = complex(a)
        x, y = 2*index[mode], 2*index[mode] + 1
        sign = -1.0 if conjugate else 1.0
        # a (x + i s y) with s = +1 or -1
        features[x, 0] += a.real
        features[y, 0] += -sign*a.imag
        features[x, 1] += a.imag
        features[y, 1] += sign*a.real
    return features


def _radial_coeffs(a0, a1=0.0, a2=0.0):
    """polyval2d coefficients of a0 + a1 (x^2 + y^2) + a2 (x^2 + y^2)^2."""
    coeffs = np.zeros((5, 5))
    coeffs[0, 0] = a0
    coeffs[2, 0] = coeffs[0, 2] = a1
    coeffs[4, 0] = coeffs[0, 4] = a2
    coeffs[2, 2] = 2*a2
    return coeffs


def wigner_c3msv(cfg, beta1, beta2, beta3):
    """Wigner function of the unsubtracted three-mode state at complex points (broadcast)."""
    return c3msv_wigner(cfg)(beta1, beta2, beta3)


def c3msv_wigner(cfg):
    """GaussPolyWigner of the three-mode state written from its mean photon numbers and couplings."""
    c, eps1, eps2 = cfg.c, cfg.epsilon1, cfg.epsilon2
    occupations = mean_photon_numbers(cfg)[:3]
    form = _QuadraticForm((1, 2, 3))
    for mode, n in zip((1, 2, 3), occupations):
        form.modulus(mode, 2*(2*n + 1))
    form.product(8, c*np.conj(eps1), 1, 2)
    form.product(8, np.conj(eps1)*eps2, 1, 3, conjugate_second=True)
    form.product(8, c*np.conj(eps2), 2, 3)
    return GaussPolyWigner(form.matrix, np.eye(6)[:, :2], [[1.0]], 8/math.pi**3, (1, 2, 3), label='C1')


def wigner_gaussian(cm, modes=None, label='gaussian'):
    """Wigner function (2/pi)^n / sqrt(det V) exp(-2 b^T V^{-1} b) of a zero-mean Gaussian state."""
    cm = cm if isinstance(cm, CovarianceMatrix) else CovarianceMatrix(cm)
    n = cm.n_modes
    modes = tuple(modes) if modes is not None else tuple(range(1, n + 1))
    quad_form = 2*np.linalg.inv(cm.entries)
    norm = (2/math.pi)**n/math.sqrt(cm.det)
    return GaussPolyWigner(quad_form, np.eye(2*n)[:, :2], [[1.0]], norm, modes, label=label)


def _two_mode_form(cfg, scheme_tag):
    c, s = cfg.c, cfg.s
    eps1, eps2 = cfg.epsilon1, cfg.epsilon2
    omega0, omega1, omega2 = cfg.omegas
    if scheme_tag == '1a|23':
        modes = (2, 3)
        form = _QuadraticForm(modes)
        form.modulus(2, 2*omega1/omega2)
        form.modulus(3, 2*omega0/omega2)
        form.product(8/omega2, c*np.conj(eps2), 2, 3)
        features = _linear_features(modes, [(c, 2, False), (eps2, 3, True)])
        return modes, form.matrix, features, _radial_coeffs(-omega2, 4.0), 4/(math.pi**2*omega2**3)
    if scheme_tag == '3a|12':
        modes = (1, 2)
        form = _QuadraticForm(modes)
        form.modulus(2, 2*omega2/omega1)
        form.modulus(1, 2*omega0/omega1)
        form.product(8/omega1, c*np.conj(eps1), 1, 2)
        features = _linear_features(modes, [(c, 2, False), (eps1, 1, True)])
        return modes, form.matrix, features, _radial_coeffs(-omega1, 4.0), 4/(math.pi**2*omega1**3)
    # 2a|13, with eps_j / s in the feature so the s^2 of the prefactor cancels
    modes = (1, 3)
    form = _QuadraticForm(modes)
    form.modulus(1, 2*omega1/omega0)
    form.modulus(3, 2*omega2/omega0)
    form.product(-8/omega0, np.conj(eps1)*eps2, 1, 3, conjugate_second=True)
    unit1 = np.exp(1j*cfg.theta1)*math.cos(cfg.phi)
    unit2 = np.exp(1j*cfg.theta2)*math.sin(cfg.phi)
    features = _linear_features(modes, [(np.conj(unit1), 1, False), (np.conj(unit2), 3, False)])
    return modes, form.matrix, features, _radial_coeffs(-omega0, 4*c**2), 4/(math.pi**2*omega0**3)


def _one_mode_form(cfg, form_id):
    c = cfg.c
    cos_phi, sin_phi, cos2phi = math.cos(cfg.phi), math.sin(cfg.phi), math.cos(2*cfg.phi)
    e1, e2 = abs(cfg.epsilon1)**2, abs(cfg.epsilon2)**2
    omega0, omega1, omega2 = cfg.omegas
    if form_id == 'C5':
        mode, width = 1, omega2
        norm = 2/(math.pi*omega0*omega2**5)
        coeffs = _radial_coeffs(omega2**2*omega1, 4*e1*(4*c**4 - omega1**2), 16*c**2*e1**2)
    elif form_id == 'C6':
        mode, width = 2, omega0
        norm = 2/(math.pi*omega0**5)
        coeffs = _radial_coeffs(omega0**2, -8*omega0*c**2, 8*c**4)
    elif form_id == 'C7':
        mode, width = 3, omega1
        norm = 2/(math.pi*omega0*omega1**5)
        coeffs = _radial_coeffs(omega1**2*omega2, 4*e2*(4*c**4 - omega2**2), 16*c**2*e2**2)
    elif form_id in ('C8', 'C10'):
        mode, width = 2, omega0
        norm = 2/(math.pi*omega0**3)
        coeffs = _radial_coeffs(-omega0, 4*c**2)
    elif form_id == 'C9':
        mode, width = 1, omega2
        norm = 2/(math.pi*omega2**3)
        coeffs = _radial_coeffs(omega2, 4*e1)
    elif form_id == 'C11':
        mode, width = 1, omega2
        norm = 2/(math.pi*omega2**3)
        coeffs = _radial_coeffs(-omega2*cos2phi, 4*c**2*cos_phi**2)
    elif form_id == 'C12':
        mode, width = 3, omega1
        norm = 2/(math.pi*omega1**3)
        coeffs = _radial_coeffs(omega1, 4*e2)
    else:
        # C13
        mode, width = 3, omega1
        norm = 2/(math.pi*omega1**3)
        coeffs = _radial_coeffs(omega1*cos2phi, 4*c**2*sin_phi**2)
    quad_form = (2/width)*np.eye(2)
    return (mode,), quad_form, np.eye(2), coeffs, norm


def wigner_closed_form(cfg, scheme):
    """Closed-form Wigner function of a remotely photon-subtracted state.

    Parameters
    ----------
    cfg : SqueezingConfig
    scheme : SubtractionScheme or str

    Returns
    -------
    GaussPolyWigner
        On the kept modes of the scheme, in ascending mode order.
    """
    scheme = get_scheme(scheme)
    if scheme.closed_form in ('C2', 'C3', 'C4'):
        modes, quad_form, features, coeffs, norm = _two_mode_form(cfg, scheme.tag)
    else:
        modes, quad_form, features, coeffs, norm = _one_mode_form(cfg, scheme.closed_form)
    return GaussPolyWigner(quad_form, features, coeffs, norm, modes,
                           label='{} ({})'.format(scheme.tag, scheme.closed_form))


def negativity_details(wigner, quad=None):
    """int |W| - 1 with convergence bookkeeping.

    Returns
    -------
    c3msv.analysis.quadrature.QuadratureResult
        ``value`` is clamped to 0 when it lies within ``quad.tol`` of zero.
    """
    quad = quad or QuadratureSpec()

    def estimate(points):
        return wigner.expectation(np.abs, points, quad.half_width) - 1

    result = refine(estimate, quad, label='negativity of {}'.format(wigner.label))
    if abs(result.value) < quad.tol:
        result.value = 0.0
    _log.debug('negativity of %s = %.12g after %d refinements', wigner.label, result.value, result.refinements)
    return result


def negativity(cfg, scheme, quad=None):
    """Wigner negativity of the remote state of ``scheme``.

    Parameters
    ----------
    cfg : SqueezingConfig
    scheme : SubtractionScheme or str
    quad : QuadratureSpec

    Returns
    -------
    float
    """
    return negativity_details(wigner_closed_form(cfg, scheme), quad).value


def negativity_scan(cfg, scheme, grid, parameter='phi', quad=None):
    """Negativity over an ascending grid of phi or n_T, other parameters taken from ``cfg``.

    Returns
    -------
    [(float, QuadratureResult)]
    """
    grid = check_monotone(grid, '{} grid'.format(parameter))
    scheme = get_scheme(scheme)
    rows = []
    for value in grid:
        if parameter == 'phi':
            point = cfg.with_phi(value)
        elif parameter == 'nbar':
            point = SqueezingConfig.from_nbar(value, cfg.phi, cfg.theta1, cfg.theta2)
        else:
            raise ConfigError('Cannot scan over "{}", use phi or nbar'.format(parameter))
        rows.append((float(value), negativity_details(wigner_closed_form(point, scheme), quad)))
    return rows


AdditivityCheck = namedtuple('AdditivityCheck', ['label', 'joint', 'parts', 'relation', 'holds'])

_ADDITIVITY = (('1a|23', ('1a|2', '1a|3'), '>='),
               ('3a|12', ('3a|1', '3a|2'), '>='),
               ('2a|13', ('2a|1', '2a|3'), '>='),
               ('1a3a|2', ('1a3|2', '13a|2'), '<'))


def additivity_report(cfg, quad=None):
    """Compare the joint negativity of each steering group with the sum over its members.

    Returns
    -------
    [AdditivityCheck]
        Three super-additive comparisons followed by the sub-additive one of the central mode.
    """
    checks = []
    for joint_tag, part_tags, relation in _ADDITIVITY:
        joint = negativity(cfg, joint_tag, quad)
        parts = sum(negativity(cfg, tag, quad) for tag in part_tags)
        holds = joint >= parts - 1e-9 if relation == '>=' else joint < parts
        checks.append(AdditivityCheck('{} {} {}'.format(joint_tag, relation, ' + '.join(part_tags)),
                                      joint, parts, relation, holds))
    return checks
