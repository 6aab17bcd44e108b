"""
Brute-force Fock-basis representation of the coupled three-mode squeezed vacuum.

The state is

    |psi> = (1/c) sum_{n1, n3} (-eps1/c)^{n1} (-eps2/c)^{n3} sqrt((n1 + n3)! / (n1! n3!)) |n1, n1 + n3, n3>

so only the slice n2 = n1 + n3 is populated. Truncating at n2 <= N leaves out a norm of exactly
tanh(r)^{2(N + 1)}. Photon subtraction, partial traces and Wigner functions are computed here
numerically and serve as an independent check of the closed forms in ``c3msv.analysis.wigner``.
"""

from __future__ import division

import logging
import math
import warnings

import numpy as np
from monty.json import MSONable
from scipy.special import eval_genlaguerre

from c3msv.errors import ConfigError, CutoffError, VacuumSubtractionError
from c3msv.analysis.quadrature import QuadratureSpec, normal_trapezoid_rule, whitening, refine
from c3msv.analysis.schemes import get_scheme
from c3msv.gaussian.covariance import cm_from_moments
from c3msv.utils import DEFAULTS, log_factorial

_log = logging.getLogger(__name__)


def truncation_defect(cfg, cutoff):
    """Norm missing from the state truncated at n2 <= cutoff."""
    return (cfg.s/cfg.c)**(2*(cutoff + 1))


def auto_cutoff(cfg, budget=None):
    """Smallest cutoff N >= 1 whose truncation defect is below ``budget``."""
    if budget is None:
        budget = DEFAULTS['defect_budget']
    if not 0 < budget < 1:
        raise ConfigError('Defect budget must lie in (0, 1), got {}'.format(budget))
    t2 = (cfg.s/cfg.c)**2
    if t2 == 0:
        return 1
    cutoff = max(1, int(math.floor(math.log(budget)/math.log(t2))))
    while truncation_defect(cfg, cutoff) >= budget:
        cutoff += 1
    _log.debug('auto cutoff %d for n_T=%g (defect %.3e)', cutoff, cfg.nbar_total, truncation_defect(cfg, cutoff))
    return cutoff


class FockState(MSONable):
    """Truncated three-mode state stored on the (n1, n3) slice.

    Parameters
    ----------
    cfg : SqueezingConfig
    cutoff : int
        Largest photon number kept in any mode.
    amplitudes : array_like
        (cutoff + 1) x (cutoff + 1) complex array indexed by (n1, n3); entries with n1 + n3 > cutoff are 0.
    """

    def __init__(self, cfg, cutoff, amplitudes):
        self.cfg = cfg
        self.cutoff = int(cutoff)
        self.amplitudes = np.array(amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.cutoff + 1, self.cutoff + 1):
            raise ConfigError('Amplitude array of shape {} does not match cutoff {}'.format(
                self.amplitudes.shape, self.cutoff))

    @property
    def truncation_defect(self):
        return max(0.0, 1 - float(np.sum(np.abs(self.amplitudes)**2)))

    def dense(self):
        """Amplitude tensor psi[n1, n2, n3] of shape (N + 1)^3."""
        dim = self.cutoff + 1
        psi = np.zeros((dim, dim, dim), dtype=complex)
        n1, n3 = np.indices((dim, dim))
        mask = n1 + n3 <= self.cutoff
        psi[n1[mask], (n1 + n3)[mask], n3[mask]] = self.amplitudes[mask]
        return psi

    def as_dict(self):
        return {'@module': self.__class__.__module__, '@class': self.__class__.__name__,
                'cfg': self.cfg.as_dict(), 'cutoff': self.cutoff,
                'amplitudes_real': self.amplitudes.real.tolist(), 'amplitudes_imag': self.amplitudes.imag.tolist()}

    @classmethod
    def from_dict(cls, d):
        from c3msv.gaussian.squeezing import SqueezingConfig
        amplitudes = np.array(d['amplitudes_real']) + 1j*np.array(d['amplitudes_imag'])
        return cls(SqueezingConfig.from_dict(d['cfg']), d['cutoff'], amplitudes)

    def __repr__(self):
        return 'FockState(cutoff={}, defect={:.3e})'.format(self.cutoff, self.truncation_defect)


def build_c3msv_fock(cfg, cutoff=None, budget=None):
    """Truncated Fock amplitudes of the three-mode state.

    Parameters
    ----------
    cfg : SqueezingConfig
    cutoff : int
        Chosen with ``auto_cutoff`` when omitted.
    budget : float
        Largest acceptable truncation defect, default ``DEFAULTS['defect_budget']``.

    Returns
    -------
    FockState

    Raises
    ------
    CutoffError
        When an explicit cutoff leaves a defect above the budget.
    """
    if budget is None:
        budget = DEFAULTS['defect_budget']
    if cutoff is None:
        cutoff = auto_cutoff(cfg, budget)
    cutoff = int(cutoff)
    if cutoff < 1:
        raise ConfigError('Fock cutoff must be at least 1, got {}'.format(cutoff))
    defect = truncation_defect(cfg, cutoff)
    if defect > budget:
        raise CutoffError('Cutoff {} leaves a truncation defect {:.3e} above the budget {:.1e}; need at least {}'.format(
            cutoff, defect, budget, auto_cutoff(cfg, budget)))
    c = cfg.c
    n1, n3 = np.indices((cutoff + 1, cutoff + 1))
    binomial = np.exp((log_factorial(n1 + n3) - log_factorial(n1) - log_factorial(n3))/2)
    amplitudes = (np.power(-cfg.epsilon1/c, n1)*np.power(-cfg.epsilon2/c, n3)*binomial)/c
    amplitudes[n1 + n3 > cutoff] = 0
    return FockState(cfg, cutoff, amplitudes)


def annihilate(psi, axis, power=1):
    """Apply a^power on one axis of an amplitude tensor (entries pushed past the cutoff are dropped)."""
    psi = np.asarray(psi, dtype=complex)
    if power == 0:
        return psi
    dim = psi.shape[axis]
    if power >= dim:
        return np.zeros_like(psi)
    n = np.arange(dim - power)
    # sqrt((n + power)! / n!)
    weights = np.exp((log_factorial(n + power) - log_factorial(n))/2)
    shape = [1]*psi.ndim
    shape[axis] = dim - power
    shifted = np.take(psi, np.arange(power, dim), axis=axis)*weights.reshape(shape)
    pad = [(0, 0)]*psi.ndim
    pad[axis] = (0, power)
    return np.pad(shifted, pad, mode='constant')


def ladder_matrix(cutoff):
    """Matrix of the annihilation operator in the truncated basis."""
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), k=1)


class DensityMatrix(MSONable):
    """Density matrix of one or two modes in a truncated Fock basis.

    Parameters
    ----------
    entries : array_like
        (N + 1)^n x (N + 1)^n matrix, the first mode being the slow index.
    modes : [int]
        1-based mode labels.
    cutoff : int
    check : bool
        Verify unit trace, hermiticity and positivity to 1e-10.
    """

    def __init__(self, entries, modes, cutoff, check=True):
        self.entries = np.array(entries, dtype=complex)
        self.modes = tuple(int(m) for m in modes)
        self.cutoff = int(cutoff)
        dim = (self.cutoff + 1)**len(self.modes)
        if self.entries.shape != (dim, dim):
            raise ConfigError('Density matrix of shape {} does not match {} modes at cutoff {}'.format(
                self.entries.shape, len(self.modes), self.cutoff))
        if check:
            self.validate()

    @classmethod
    def from_pure(cls, psi, modes):
        """|psi><psi| for an amplitude tensor with one axis per mode."""
        psi = np.asarray(psi, dtype=complex)
        vector = psi.reshape(-1)
        vector = vector/np.linalg.norm(vector)
        return cls(np.outer(vector, vector.conj()), modes, psi.shape[0] - 1)

    @property
    def n_modes(self):
        return len(self.modes)

    @property
    def dim(self):
        return self.cutoff + 1

    def validate(self, tol=1e-10):
        trace = np.trace(self.entries)
        if abs(trace - 1) > tol:
            raise ConfigError('Density matrix trace {:.12g} differs from 1'.format(trace.real))
        if np.abs(self.entries - self.entries.conj().T).max() > tol:
            raise ConfigError('Density matrix is not Hermitian')
        if np.linalg.eigvalsh((self.entries + self.entries.conj().T)/2).min() < -tol:
            raise ConfigError('Density matrix has a negative eigenvalue')
        return self

    def purity(self):
        return float(np.real(np.trace(self.entries.dot(self.entries))))

    def tensor(self):
        """Entries reshaped to [m_1, ..., m_n, k_1, ..., k_n]."""
        return self.entries.reshape((self.dim,)*(2*self.n_modes))

    def expectation(self, operators):
        """Tr(rho O_1 x ... x O_n) for one single-mode operator per mode."""
        total = operators[0]
        for op in operators[1:]:
            total = np.kron(total, op)
        return complex(np.trace(self.entries.dot(total)))

    def covariance(self):
        """Covariance matrix assembled from <a_j^dag a_k> and <a_j a_k>."""
        a = ladder_matrix(self.cutoff)
        eye = np.eye(self.dim)
        n = self.n_modes
        n_matrix = np.zeros((n, n), dtype=complex)
        m_matrix = np.zeros((n, n), dtype=complex)
        for j in range(n):
            for k in range(n):
                if j == k:
                    ops_n = [a.conj().T.dot(a) if i == j else eye for i in range(n)]
                    ops_m = [a.dot(a) if i == j else eye for i in range(n)]
                else:
                    ops_n = [a.conj().T if i == j else a if i == k else eye for i in range(n)]
                    ops_m = [a if i in (j, k) else eye for i in range(n)]
                n_matrix[j, k] = self.expectation(ops_n)
                m_matrix[j, k] = self.expectation(ops_m)
        return cm_from_moments(n_matrix, m_matrix)

    def as_dict(self):
        return {'@module': self.__class__.__module__, '@class': self.__class__.__name__,
                'entries_real': self.entries.real.tolist(), 'entries_imag': self.entries.imag.tolist(),
                'modes': list(self.modes), 'cutoff': self.cutoff}

    @classmethod
    def from_dict(cls, d):
        return cls(np.array(d['entries_real']) + 1j*np.array(d['entries_imag']), d['modes'], d['cutoff'])

    def __repr__(self):
        return 'DensityMatrix(modes={}, cutoff={})'.format(self.modes, self.cutoff)


class SubtractionResult(MSONable):
    """Reduced state of a subtraction scheme with the normalization that was needed.

    Parameters
    ----------
    density : DensityMatrix
    measured_prefactor : float
        1 / ||a...|psi>||^2 on the truncated state.
    published_prefactor : float
        The analytic normalization of the scheme.
    """

    def __init__(self, density, measured_prefactor, published_prefactor):
        self.density = density
        self.measured_prefactor = float(measured_prefactor)
        self.published_prefactor = float(published_prefactor)

    @property
    def prefactor_mismatch(self):
        return abs(self.measured_prefactor/self.published_prefactor - 1)


def subtracted_state(state, modes):
    """Normalized a_{m}...|psi> as an (N + 1)^3 tensor together with its squared norm before normalizing.

    Raises
    ------
    VacuumSubtractionError
        If a subtracted mode carries no photons, so that the result vanishes.
    """
    psi = state.dense()
    for mode in modes:
        psi = annihilate(psi, mode - 1)
    norm = float(np.real(np.vdot(psi, psi)))
    if norm < 1e-14:
        raise VacuumSubtractionError('Subtracting from modes {} annihilates the state (norm {:.3e})'.format(
            tuple(modes), norm))
    return psi/math.sqrt(norm), norm


def subtract_and_reduce(state, scheme, rtol=1e-5):
    """Apply the scheme's annihilation operators, renormalize and trace out the steering party.

    Parameters
    ----------
    state : FockState
    scheme : SubtractionScheme or str
    rtol : float
        A relative disagreement between the measured and the published normalization above this
        is reported with a warning.

    Returns
    -------
    SubtractionResult
    """
    scheme = get_scheme(scheme)
    psi, norm = subtracted_state(state, scheme.subtracted_modes)
    kept = [m - 1 for m in scheme.kept_modes]
    traced = [m - 1 for m in scheme.traced_modes]
    dim = state.cutoff + 1
    matrix = np.transpose(psi, kept + traced).reshape(dim**len(kept), -1)
    rho = matrix.dot(matrix.conj().T)
    rho = (rho + rho.conj().T)/2
    density = DensityMatrix(rho/np.trace(rho).real, scheme.kept_modes, state.cutoff)
    result = SubtractionResult(density, 1/norm, scheme.published_prefactor(state.cfg))
    if result.prefactor_mismatch > rtol:
        warnings.warn('Measured normalization {:.9g} of {} differs from the published {:.9g}'.format(
            result.measured_prefactor, scheme.tag, result.published_prefactor))
    return result


def displacement_matrix(alpha, cutoff):
    """<m|D(alpha)|n> for m, n <= cutoff from the associated Laguerre closed form.

    For m >= n the element is sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2); the
    elements with m < n follow from <m|D(alpha)|n> = conj(<n|D(-alpha)|m>).
    """
    alpha = complex(alpha)
    dim = cutoff + 1
    m, n = np.indices((dim, dim))
    low, high = np.minimum(m, n), np.maximum(m, n)
    x = abs(alpha)**2
    laguerre = eval_genlaguerre(low, high - low, x)
    scale = np.exp((log_factorial(low) - log_factorial(high))/2 - x/2)
    power = np.where(m >= n, np.power(alpha, np.clip(m - n, 0, None)), np.power(-np.conj(alpha), np.clip(n - m, 0, None)))
    return scale*power*laguerre


def _parity(dim):
    return (-1.0)**np.arange(dim)


def _parity_displacements(betas, cutoff):
    """Stack of (-1)^m <n|D(2 beta)|m> transposed to [beta, m, n]."""
    parity = _parity(cutoff + 1)
    return np.array([displacement_matrix(2*beta, cutoff).T*parity[:, None] for beta in betas])


def _check_radius(betas, cutoff):
    radius2 = np.max(np.abs(betas)**2) if len(betas) else 0.0
    if radius2 > cutoff/4:
        warnings.warn('Phase-space points with |beta|^2 = {:.3g} exceed cutoff/4 = {:.3g}; the truncated state '
                      'is not reliable there'.format(radius2, cutoff/4))


def wigner_from_density(rho, *betas, **kwargs):
    """Wigner function by displaced parity, W = (2/pi)^n sum rho_{mk} (-1)^m <k|D(2 beta)|m> per mode.

    Parameters
    ----------
    rho : DensityMatrix
    betas : array_like
        One array of complex points per mode of ``rho``, broadcast together.
    warn : bool
        Keyword only; warn about points beyond the reliable radius (default True).

    Returns
    -------
    numpy.ndarray
        Real values with the broadcast shape of ``betas``.
    """
    warn = kwargs.pop('warn', True)
    if kwargs:
        raise TypeError('Unexpected keyword arguments {}'.format(sorted(kwargs)))
    if len(betas) != rho.n_modes:
        raise ConfigError('Density matrix on {} modes needs {} phase-space arguments, got {}'.format(
            rho.n_modes, rho.n_modes, len(betas)))
    arrays = np.broadcast_arrays(*[np.asarray(beta, dtype=complex) for beta in betas])
    shape = arrays[0].shape
    flat = [a.reshape(-1) for a in arrays]
    if warn:
        for points in flat:
            _check_radius(points, rho.cutoff)
    dim = rho.dim
    if rho.n_modes == 1:
        values = np.empty(flat[0].size, dtype=complex)
        for start in range(0, flat[0].size, 1024):
            kernels = _parity_displacements(flat[0][start:start + 1024], rho.cutoff)
            values[start:start + 1024] = np.einsum('mk,gmk->g', rho.entries, kernels)
        return (2/math.pi)*values.real.reshape(shape)
    # order (m_a, k_a) x (m_b, k_b) so both contractions are matrix products
    r = rho.tensor().transpose(0, 2, 1, 3).reshape(dim*dim, dim*dim)
    unique_a, index_a = np.unique(flat[0], return_inverse=True)
    unique_b, index_b = np.unique(flat[1], return_inverse=True)
    kernel_a = _parity_displacements(unique_a, rho.cutoff).reshape(len(unique_a), -1)
    kernel_b = _parity_displacements(unique_b, rho.cutoff).reshape(len(unique_b), -1)
    if len(unique_a)*len(unique_b) <= max(4*len(flat[0]), 1 << 22):
        # product grids repeat each per-mode point many times
        values = kernel_a.dot(r).dot(kernel_b.T)[index_a, index_b]
    else:
        values = np.empty(len(flat[0]), dtype=complex)
        for start in range(0, len(flat[0]), 1024):
            rows_a = kernel_a[index_a[start:start + 1024]]
            rows_b = kernel_b[index_b[start:start + 1024]]
            values[start:start + 1024] = np.sum(rows_a.dot(r)*rows_b, axis=1)
    return (2/math.pi)**2*values.real.reshape(shape)


def _mode_whitenings(rho):
    """Per-mode maps z -> (Re beta, Im beta) = L z, from the covariance of each mode under W."""
    cm = rho.covariance()
    return [whitening(cm.block(j, j)/4) for j in range(rho.n_modes)]


def _oracle_estimate(rho, lowers, points, half_width, chunk=256):
    z, _ = normal_trapezoid_rule(points, half_width)
    dz = z[1] - z[0]
    w = np.full(points, dz)
    w[0] = w[-1] = dz/2
    zx, zy = np.meshgrid(z, z, indexing='ij')
    plane = np.stack([zx.reshape(-1), zy.reshape(-1)])
    plane_weights = np.outer(w, w).reshape(-1)
    betas = []
    for lower in lowers:
        b = lower.dot(plane)
        betas.append(b[0] + 1j*b[1])
    jacobian = np.prod([abs(np.linalg.det(lower)) for lower in lowers])
    if rho.n_modes == 1:
        values = wigner_from_density(rho, betas[0], warn=False)
        return jacobian*float(np.sum(plane_weights*np.abs(values))) - 1
    # the grid is a product of one plane per mode, so W on it is K_a R K_b^T
    dim = rho.dim
    r = rho.tensor().transpose(0, 2, 1, 3).reshape(dim*dim, dim*dim)
    kernel_a = _parity_displacements(betas[0], rho.cutoff).reshape(len(betas[0]), -1)
    kernel_b = _parity_displacements(betas[1], rho.cutoff).reshape(len(betas[1]), -1)
    right = r.dot(kernel_b.T)
    total = 0.0
    for start in range(0, kernel_a.shape[0], chunk):
        block = kernel_a[start:start + chunk].dot(right).real
        total += float(np.sum(plane_weights[start:start + chunk, None]*plane_weights[None, :]*np.abs(block)))
    return jacobian*(2/math.pi)**2*total - 1


def negativity_oracle(rho, quad=None):
    """int |W| - 1 for a Fock-basis density matrix.

    The grid is a product of one plane per mode, each whitened by the covariance of that mode.

    Returns
    -------
    c3msv.analysis.quadrature.QuadratureResult
    """
    quad = quad or QuadratureSpec()
    lowers = _mode_whitenings(rho)
    result = refine(lambda points: _oracle_estimate(rho, lowers, points, quad.half_width), quad,
                    label='oracle negativity on modes {}'.format(rho.modes))
    if abs(result.value) < quad.tol:
        result.value = 0.0
    return result
