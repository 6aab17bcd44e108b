"""
Normally ordered moments <a1^dag^k1 a2^dag^k2 a3^dag^k3 a1^l1 a2^l2 a3^l3>.

Two independent evaluations are provided. ``moment_fock`` applies ladder operators to the
truncated Fock state. ``moment_generating`` reads the moment off the normally ordered generating
function

    <exp(mu . a^dag) exp(nu . a)> = exp(Q(mu, nu)),
    Q = sum_jk N_jk mu_j nu_k + (1/2) sum_jk (M_jk nu_j nu_k + M_jk^* mu_j mu_k)

with N_jk = <a_j^dag a_k> and M_jk = <a_j a_k>. Q is quadratic, so only the term Q^{D/2} / (D/2)!
of the exponential contributes to a moment of total degree D.
"""

from __future__ import division

import logging
import math
from collections import defaultdict

import numpy as np
from monty.json import MSONable

from c3msv.errors import ConfigError, CutoffError
from c3msv.analysis.fock import annihilate
from c3msv.gaussian.covariance import c3msv_moment_matrices, cm_from_moments
from c3msv.utils import parse_moment_spec

_log = logging.getLogger(__name__)


class MomentSpec(MSONable):
    """Creation powers ``k`` and annihilation powers ``l`` of a three-mode normally ordered moment.

    Parameters
    ----------
    k : [int]
    l : [int]
    """

    def __init__(self, k, l):
        self.k = tuple(int(x) for x in k)
        self.l = tuple(int(x) for x in l)
        if len(self.k) != 3 or len(self.l) != 3:
            raise ConfigError('A moment needs three creation and three annihilation powers, got {} and {}'.format(
                self.k, self.l))
        if min(self.k + self.l) < 0:
            raise ConfigError('Moment powers must be nonnegative, got {} and {}'.format(self.k, self.l))

    @classmethod
    def from_string(cls, text):
        """``"k1,k2,k3,l1,l2,l3"``"""
        return cls(*parse_moment_spec(text))

    @property
    def degree(self):
        return sum(self.k) + sum(self.l)

    @property
    def label(self):
        return ','.join(str(x) for x in self.k + self.l)

    def __eq__(self, other):
        if not isinstance(other, MomentSpec):
            return NotImplemented
        return (self.k, self.l) == (other.k, other.l)

    def __hash__(self):
        return hash((self.k, self.l))

    def __repr__(self):
        return 'MomentSpec({})'.format(self.label)


def moment_fock(state, spec):
    """The moment on the truncated Fock state, <a^k psi | a^l psi>.

    Raises
    ------
    CutoffError
        If a power exceeds the cutoff or the total degree exceeds twice the cutoff.
    """
    if max(spec.k + spec.l) > state.cutoff or spec.degree > 2*state.cutoff:
        raise CutoffError('Moment {} needs more headroom than cutoff {}'.format(spec.label, state.cutoff))
    psi = state.dense()
    left, right = psi, psi
    for axis in range(3):
        left = annihilate(left, axis, spec.k[axis])
        right = annihilate(right, axis, spec.l[axis])
    return complex(np.vdot(left, right))


def _generating_exponent(n_matrix, m_matrix):
    """Q as a sparse polynomial {(k1, k2, k3, l1, l2, l3): coefficient}; mu carries k, nu carries l."""
    q = defaultdict(complex)
    for j in range(3):
        for k in range(3):
            if n_matrix[j, k] != 0:
                exponent = [0]*6
                exponent[j] += 1
                exponent[3 + k] += 1
                q[tuple(exponent)] += n_matrix[j, k]
            if m_matrix[j, k] != 0:
                nu = [0]*6
                nu[3 + j] += 1
                nu[3 + k] += 1
                q[tuple(nu)] += m_matrix[j, k]/2
                mu = [0]*6
                mu[j] += 1
                mu[k] += 1
                q[tuple(mu)] += np.conj(m_matrix[j, k])/2
    return dict(q)


def _multiply(poly, other, target):
    product = defaultdict(complex)
    for e1, c1 in poly.items():
        for e2, c2 in other.items():
            exponent = tuple(a + b for a, b in zip(e1, e2))
            if all(a <= t for a, t in zip(exponent, target)):
                product[exponent] += c1*c2
    return dict(product)


def moment_generating(cfg, spec):
    """The moment from the coefficient of prod mu^k nu^l in exp(Q), times prod k! prod l!.

    Parameters
    ----------
    cfg : SqueezingConfig
    spec : MomentSpec

    Returns
    -------
    complex
        Exactly 0 for odd total degree.
    """
    if spec.degree % 2:
        return 0j
    target = spec.k + spec.l
    half = spec.degree//2
    q = _generating_exponent(*c3msv_moment_matrices(cfg))
    poly = {(0,)*6: 1 + 0j}
    for _ in range(half):
        poly = _multiply(poly, q, target)
    coefficient = poly.get(target, 0j)/math.factorial(half)
    weight = 1
    for power in target:
        weight *= math.factorial(power)
    return complex(coefficient*weight)


def second_moment_matrices(state):
    """N_jk = <a_j^dag a_k> and M_jk = <a_j a_k> evaluated on a Fock state."""
    n_matrix = np.zeros((3, 3), dtype=complex)
    m_matrix = np.zeros((3, 3), dtype=complex)
    for j in range(3):
        for k in range(3):
            creation = [0, 0, 0]
            creation[j] += 1
            pair = [0, 0, 0]
            pair[j] += 1
            pair[k] += 1
            single = [0, 0, 0]
            single[k] += 1
            n_matrix[j, k] = moment_fock(state, MomentSpec(creation, single))
            m_matrix[j, k] = moment_fock(state, MomentSpec((0, 0, 0), pair))
    return n_matrix, m_matrix


def fock_covariance(state):
    """Covariance matrix rebuilt from the Fock-state second moments."""
    return cm_from_moments(*second_moment_matrices(state))
