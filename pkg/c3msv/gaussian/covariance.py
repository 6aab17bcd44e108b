"""
Covariance matrices and the symplectic linear algebra used by the steering and decoherence layers.

Quadratures are x = (a + a^dag)/sqrt(2) and p = (a - a^dag)/(i sqrt(2)), ordered
(x_1, p_1, x_2, p_2, ...). With V_jk = <{X_j, X_k}> the vacuum covariance matrix is the identity
and the diagonal block of a mode with mean photon number n is (1 + 2n) I_2.

Mode indices are 0-based in this module. Labels shown to users (``Partition.label``) are 1-based.
"""

from __future__ import division

import logging
import math

import numpy as np
import scipy.linalg
from monty.json import MSONable

from c3msv.errors import ConfigError, SingularBlockError, NotPositiveDefiniteError
from c3msv.utils import DEFAULTS

_log = logging.getLogger(__name__)

OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_modes):
    """Block diagonal Omega for ``n_modes`` modes."""
    return np.kron(np.eye(n_modes), OMEGA_1)


def sigma_theta(theta):
    """The reflection block [[cos, sin], [sin, -cos]] coupling a pair-created mode pair."""
    return np.array([[math.cos(theta), math.sin(theta)], [math.sin(theta), -math.cos(theta)]])


def rotation_theta(theta):
    """The rotation block [[cos, sin], [-sin, cos]] coupling a beam-splitter-like mode pair."""
    return np.array([[math.cos(theta), math.sin(theta)], [-math.sin(theta), math.cos(theta)]])


def is_bona_fide(matrix, tol=1e-10):
    """True if V + i Omega is positive semidefinite within ``tol``."""
    matrix = np.asarray(matrix, dtype=float)
    n_modes = matrix.shape[0] // 2
    return np.linalg.eigvalsh(matrix + 1j*symplectic_form(n_modes)).min() >= -tol


class CovarianceMatrix(MSONable):
    """Real symmetric 2n x 2n covariance matrix of an n-mode zero-mean Gaussian state.

    Parameters
    ----------
    entries : array_like
        The matrix. It is symmetrized; an asymmetry above 1e-12 (relative to the largest entry)
        is rejected.
    """

    def __init__(self, entries):
        entries = np.array(entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] % 2:
            raise ConfigError('Covariance matrix must be square with even size, got shape {}'.format(entries.shape))
        scale = max(1.0, np.abs(entries).max())
        asymmetry = np.abs(entries - entries.T).max()
        if asymmetry > 1e-12*scale:
            raise ConfigError('Covariance matrix is not symmetric (max asymmetry {:.3e})'.format(asymmetry))
        self.entries = (entries + entries.T)/2

    @property
    def n_modes(self):
        return self.entries.shape[0] // 2

    @property
    def det(self):
        return np.linalg.det(self.entries)

    def purity(self):
        """Tr rho^2 = 1/sqrt(det V)."""
        return 1/math.sqrt(self.det)

    def is_bona_fide(self, tol=1e-10):
        return is_bona_fide(self.entries, tol)

    def validate(self, tol=1e-10):
        """Raise ConfigError unless V + i Omega >= 0."""
        if not self.is_bona_fide(tol):
            raise ConfigError('Matrix violates the uncertainty principle V + i Omega >= 0')
        return self

    def local_mean_photons(self):
        """Mean photon number of every mode from the trace of its diagonal block."""
        diag = np.diag(self.entries)
        return (diag[0::2] + diag[1::2] - 2)/4

    def block(self, j, k):
        return self.entries[2*j:2*j + 2, 2*k:2*k + 2]

    def as_dict(self):
        return {'@module': self.__class__.__module__, '@class': self.__class__.__name__,
                'entries': self.entries.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(d['entries'])

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self):
        return 'CovarianceMatrix(n_modes={})'.format(self.n_modes)


class Partition(MSONable):
    """Assignment of modes to the steering party A and the steered party B.

    Parameters
    ----------
    party_a : [int]
        0-based mode indices of the steering party, in order.
    party_b : [int]
        0-based mode indices of the steered party, in order.
    """

    def __init__(self, party_a, party_b):
        self.party_a = tuple(int(i) for i in party_a)
        self.party_b = tuple(int(i) for i in party_b)
        if not self.party_a or not self.party_b:
            raise ConfigError('Both parties must be nonempty, got A={} B={}'.format(self.party_a, self.party_b))
        all_modes = self.party_a + self.party_b
        if len(set(all_modes)) != len(all_modes):
            raise ConfigError('Parties must be disjoint and without repeats, got A={} B={}'.format(self.party_a, self.party_b))
        if min(all_modes) < 0:
            raise ConfigError('Mode indices must be nonnegative, got {}'.format(all_modes))

    @classmethod
    def from_modes(cls, party_a, party_b):
        """Construct from 1-based mode numbers, as written in case labels."""
        return cls([m - 1 for m in party_a], [m - 1 for m in party_b])

    @property
    def modes(self):
        return self.party_a + self.party_b

    @property
    def label(self):
        return '{}->{}'.format(''.join(str(m + 1) for m in self.party_a),
                               ''.join(str(m + 1) for m in self.party_b))

    def check_range(self, n_modes):
        if max(self.modes) >= n_modes:
            raise ConfigError('Partition {} refers to a mode beyond the {} available'.format(self.label, n_modes))

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.party_a == other.party_a and self.party_b == other.party_b

    def __hash__(self):
        return hash((self.party_a, self.party_b))

    def __repr__(self):
        return 'Partition({})'.format(self.label)


def c3msv_covariance(cfg):
    """Covariance matrix of the coupled three-mode squeezed vacuum.

    Parameters
    ----------
    cfg : c3msv.gaussian.squeezing.SqueezingConfig

    Returns
    -------
    CovarianceMatrix
        Diagonal blocks (1 + 2 n_j) I_2; off-diagonal blocks -2sc cos(phi) Sigma_{theta1} (1-2),
        -2sc sin(phi) Sigma_{theta2} (2-3) and s^2 sin(2 phi) R_{theta2-theta1} (1-3).
    """
    c, s, phi = cfg.c, cfg.s, cfg.phi
    s2 = s**2
    v = np.zeros((6, 6))
    v[0:2, 0:2] = (1 + 2*s2*math.cos(phi)**2)*np.eye(2)
    v[2:4, 2:4] = (1 + 2*s2)*np.eye(2)
    v[4:6, 4:6] = (1 + 2*s2*math.sin(phi)**2)*np.eye(2)
    v12 = -2*s*c*math.cos(phi)*sigma_theta(cfg.theta1)
    v23 = -2*s*c*math.sin(phi)*sigma_theta(cfg.theta2)
    v13 = s2*math.sin(2*phi)*rotation_theta(cfg.theta2 - cfg.theta1)
    v[0:2, 2:4], v[2:4, 0:2] = v12, v12.T
    v[2:4, 4:6], v[4:6, 2:4] = v23, v23.T
    v[0:2, 4:6], v[4:6, 0:2] = v13, v13.T
    return CovarianceMatrix(v)


def _quadrature_indices(modes):
    return [2*m + q for m in modes for q in (0, 1)]


def sub_cm(cm, modes):
    """Covariance matrix of the modes ``modes`` (0-based), in the requested order."""
    modes = [int(m) for m in modes]
    if len(set(modes)) != len(modes):
        raise ConfigError('Duplicate mode in {}'.format(modes))
    if not modes or min(modes) < 0 or max(modes) >= cm.n_modes:
        raise ConfigError('Modes {} out of range for a {}-mode covariance matrix'.format(modes, cm.n_modes))
    idx = _quadrature_indices(modes)
    return CovarianceMatrix(cm.entries[np.ix_(idx, idx)])


def schur_complement(cm_ab, partition, condition_limit=None):
    """Conditional covariance sigma_{B|A} = V_B - V_AB^T V_A^{-1} V_AB.

    Parameters
    ----------
    cm_ab : CovarianceMatrix
        Covariance matrix whose modes are exactly those of the partition.
    partition : Partition
        Indices refer to the modes of ``cm_ab``.
    condition_limit : float
        Reject V_A with a larger 2-norm condition number. Defaults to ``DEFAULTS['condition_limit']``.

    Returns
    -------
    numpy.ndarray
        The symmetric 2|B| x 2|B| matrix sigma_{B|A}.
    """
    if condition_limit is None:
        condition_limit = DEFAULTS['condition_limit']
    partition.check_range(cm_ab.n_modes)
    if len(partition.modes) != cm_ab.n_modes:
        raise ConfigError('Partition {} does not cover the {} modes of the covariance matrix'.format(
            partition.label, cm_ab.n_modes))
    idx_a = _quadrature_indices(partition.party_a)
    idx_b = _quadrature_indices(partition.party_b)
    v = cm_ab.entries
    v_a = v[np.ix_(idx_a, idx_a)]
    v_b = v[np.ix_(idx_b, idx_b)]
    v_ab = v[np.ix_(idx_a, idx_b)]
    condition = np.linalg.cond(v_a)
    if not np.isfinite(condition) or condition > condition_limit:
        raise SingularBlockError('V_A for {} is singular (condition number {:.3e})'.format(
            partition.label, condition), condition=condition)
    sigma = v_b - v_ab.T.dot(scipy.linalg.solve(v_a, v_ab, assume_a='sym'))
    return (sigma + sigma.T)/2


def symplectic_eigenvalues(matrix, n_modes=None):
    """Symplectic eigenvalues of a positive definite 2n x 2n matrix.

    The eigenvalues of i Omega m come in pairs +nu, -nu; one modulus per pair is returned. With
    m = L L^T they are the eigenvalues of the Hermitian matrix i L^T Omega L.

    Parameters
    ----------
    matrix : array_like or CovarianceMatrix
    n_modes : int
        Optional check of the matrix size.

    Returns
    -------
    [float]
        n values in ascending order.
    """
    m = np.array(matrix, dtype=float)
    if n_modes is None:
        n_modes = m.shape[0] // 2
    if m.shape != (2*n_modes, 2*n_modes):
        raise ConfigError('Expected a {0}x{0} matrix, got shape {1}'.format(2*n_modes, m.shape))
    m = (m + m.T)/2
    if np.linalg.eigvalsh(m).min() <= 0:
        raise NotPositiveDefiniteError('Symplectic eigenvalues need a positive definite matrix')
    lower = scipy.linalg.cholesky(m, lower=True)
    eigs = np.linalg.eigvalsh(1j*lower.T.dot(symplectic_form(n_modes)).dot(lower))
    moduli = np.sort(np.abs(eigs))
    return moduli[0::2].tolist()


def random_symplectic(n_modes, rng):
    """A random symplectic matrix built from squeezers, phase rotations and beam splitters.

    Parameters
    ----------
    n_modes : int
    rng : numpy.random.Generator

    Returns
    -------
    numpy.ndarray
    """
    total = np.eye(2*n_modes)
    for _ in range(2):
        layer = np.eye(2*n_modes)
        for j in range(n_modes):
            sq = rng.uniform(-0.8, 0.8)
            rot = rotation_theta(rng.uniform(0, 2*math.pi))
            layer[2*j:2*j + 2, 2*j:2*j + 2] = rot.dot(np.diag([math.exp(-sq), math.exp(sq)]))
        total = layer.dot(total)
        for j in range(n_modes - 1):
            angle = rng.uniform(0, 2*math.pi)
            bs = np.eye(2*n_modes)
            idx = [2*j, 2*j + 1, 2*j + 2, 2*j + 3]
            bs[np.ix_(idx, idx)] = np.kron(np.array([[math.cos(angle), math.sin(angle)],
                                                     [-math.sin(angle), math.cos(angle)]]), np.eye(2))
            total = bs.dot(total)
    return total


def c3msv_moment_matrices(cfg):
    """Normally ordered second moments N_jk = <a_j^dag a_k> and M_jk = <a_j a_k>."""
    eps1, eps2, c = cfg.epsilon1, cfg.epsilon2, cfg.c
    n_matrix = np.zeros((3, 3), dtype=complex)
    n_matrix[0, 0] = abs(eps1)**2
    n_matrix[1, 1] = cfg.s**2
    n_matrix[2, 2] = abs(eps2)**2
    n_matrix[0, 2] = np.conj(eps1)*eps2
    n_matrix[2, 0] = np.conj(n_matrix[0, 2])
    m_matrix = np.zeros((3, 3), dtype=complex)
    m_matrix[0, 1] = m_matrix[1, 0] = -c*eps1
    m_matrix[1, 2] = m_matrix[2, 1] = -c*eps2
    return n_matrix, m_matrix


def cm_from_moments(n_matrix, m_matrix):
    """Covariance matrix from the normally ordered moment matrices N and M.

    Parameters
    ----------
    n_matrix : array_like
        Hermitian n x n matrix of <a_j^dag a_k>.
    m_matrix : array_like
        Symmetric n x n matrix of <a_j a_k>.

    Returns
    -------
    CovarianceMatrix
    """
    n_matrix = np.asarray(n_matrix, dtype=complex)
    m_matrix = np.asarray(m_matrix, dtype=complex)
    n_modes = n_matrix.shape[0]
    v = np.zeros((2*n_modes, 2*n_modes))
    identity = np.eye(n_modes)
    v[0::2, 0::2] = 2*(m_matrix + n_matrix).real + identity
    v[1::2, 1::2] = 2*(n_matrix - m_matrix).real + identity
    v[0::2, 1::2] = 2*(m_matrix + n_matrix).imag
    v[1::2, 0::2] = v[0::2, 1::2].T
    return CovarianceMatrix(v)
