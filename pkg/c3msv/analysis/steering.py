"""
Gaussian steering between the parties of a coupled three-mode squeezed vacuum.

The steerability of B by A is G^{A->B} = max(0, -sum ln nu) over the symplectic eigenvalues nu < 1
of the conditional covariance matrix sigma_{B|A}. Each symplectic eigenvalue is counted twice
(once per quadrature), so a single steered mode contributes -2 ln nu. ``SteeringResult.nu_bars``
holds this doubled list.

Two independent routes are provided: ``gaussian_steering`` works on any covariance matrix, and
``steering_closed_form`` evaluates the closed expressions for the twelve bipartitions of three modes.
"""

from __future__ import division

import logging
import math
import warnings
from collections import namedtuple

import numpy as np
from monty.json import MSONable

from c3msv.errors import ConfigError
from c3msv.gaussian.covariance import (Partition, c3msv_covariance, sub_cm, schur_complement,
                                       symplectic_eigenvalues)
from c3msv.utils import DEFAULTS, parse_case_label

_log = logging.getLogger(__name__)


class SteeringCase(MSONable):
    """One of the twelve bipartitions of three modes, e.g. ``23->1`` (modes 2 and 3 steer mode 1).

    Parameters
    ----------
    label : str
        Case label in any accepted spelling (``23->1``, ``23to1``).
    """

    def __init__(self, label):
        party_a, party_b = parse_case_label(label)
        if len(party_a) + len(party_b) > 3 or max(party_a + party_b) > 3:
            raise ConfigError('Steering case "{}" is not a bipartition of three modes'.format(label))
        self.partition = Partition.from_modes(party_a, party_b)
        self.label = self.partition.label

    def __eq__(self, other):
        if not isinstance(other, SteeringCase):
            return NotImplemented
        return self.label == other.label

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return 'SteeringCase({})'.format(self.label)


CASE_LABELS = ('23->1', '13->2', '12->3', '1->23', '2->13', '3->12',
               '2->1', '1->3', '2->3', '1->2', '3->1', '3->2')
STEERING_CASES = tuple(SteeringCase(label) for label in CASE_LABELS)

# printed closed forms for these two cases are built from ordinary eigenvalues of sigma_{B|A}
PUBLISHED_EIGENVALUE_CASES = ('1->23', '3->12')

# printed as zero, yet an outer mode steers the central one on its own side of phi = pi/4
PUBLISHED_ZERO_CASES = ('1->2', '3->2')

PUBLISHED_FLAGS = dict([(label, 'published-eigenvalue') for label in PUBLISHED_EIGENVALUE_CASES]
                       + [(label, 'published-zero') for label in PUBLISHED_ZERO_CASES])

CLOSED_FORM_VARIANTS = ('published', 'symplectic')


def get_case(case):
    """Return the SteeringCase for a label or pass a SteeringCase through."""
    if isinstance(case, SteeringCase):
        return case
    return SteeringCase(case)


class SteeringResult(MSONable):
    """Steerability of one bipartition.

    Parameters
    ----------
    value : float
        G^{A->B} in nats.
    nu_bars : [float]
        Symplectic eigenvalues of sigma_{B|A}, each listed twice, ascending.
    case : SteeringCase or None
        The case, when the partition is one of the twelve three-mode cases.
    closed_form : float or None
        Closed-form value for comparison (filled by ``steering_table``).
    flag : str or None
        ``'published-eigenvalue'`` or ``'published-zero'`` when the comparison uses a flagged
        printed formula.
    """

    def __init__(self, value, nu_bars, case=None, closed_form=None, flag=None):
        self.value = float(value)
        self.nu_bars = [float(nu) for nu in nu_bars]
        self.case = case
        self.closed_form = closed_form
        self.flag = flag

    @property
    def deviation(self):
        if self.closed_form is None:
            return None
        return abs(self.value - self.closed_form)

    def __repr__(self):
        label = self.case.label if self.case is not None else '?'
        return 'SteeringResult({}, value={:.12g})'.format(label, self.value)


def steering_from_nu_bars(nu_bars, tol=None):
    """max(0, -sum ln nu) over the entries below 1 - tol."""
    if tol is None:
        tol = DEFAULTS['steering_tol']
    total = -math.fsum(math.log(nu) for nu in nu_bars if nu < 1 - tol)
    return max(0.0, total)


def gaussian_steering(cm, partition, case=None, tol=None):
    """Gaussian steerability G^{A->B} from a covariance matrix.

    Parameters
    ----------
    cm : c3msv.gaussian.covariance.CovarianceMatrix
        Covariance matrix containing every mode of the partition.
    partition : Partition
        Indices refer to the modes of ``cm``.
    case : SteeringCase
        Attached to the result when given.
    tol : float
        Symplectic eigenvalues within ``tol`` below 1 count as non-steering.

    Returns
    -------
    SteeringResult
    """
    partition.check_range(cm.n_modes)
    cm_ab = sub_cm(cm, partition.modes)
    n_a = len(partition.party_a)
    local = Partition(range(n_a), range(n_a, n_a + len(partition.party_b)))
    sigma = schur_complement(cm_ab, local)
    nus = symplectic_eigenvalues(sigma, len(partition.party_b))
    nu_bars = sorted(nus + nus)
    return SteeringResult(steering_from_nu_bars(nu_bars, tol), nu_bars, case=case)


def _kappa_terms(s2, c2, cos2phi, cos4phi):
    kappa0 = 4 + 4*s2*(1 + cos2phi)
    kappa1 = 1 + 3*c2 + (3 - 2*cos2phi)*s2
    kappa2 = ((19 - 12*cos2phi)*c2*s2 + (19 - 12*cos2phi + 2*cos4phi)*s2**2
              + (13 - 20*cos2phi)*s2)
    return kappa0, kappa1, kappa2


def _two_mode_log_ratio(kappa0, kappa1, kappa2):
    denominator = kappa1 - math.sqrt(max(kappa2, 0.0))
    if denominator <= 0:
        return float('inf')
    return 2*math.log(kappa0/denominator)


def steering_closed_form(cfg, case, variant='published'):
    """Closed-form steerability of one of the twelve cases.

    Parameters
    ----------
    cfg : c3msv.gaussian.squeezing.SqueezingConfig
    case : SteeringCase or str
    variant : str
        ``'published'`` evaluates the printed formulas verbatim, including the kappa/iota
        expressions of 1->23 and 3->12 and the zeros printed for 1->2 and 3->2. ``'symplectic'``
        replaces the first two by 2 ln(c^2 + s^2 cos 2phi) and 2 ln(c^2 - s^2 cos 2phi) and the zeros
        by 2 ln(omega_2/omega_1) and 2 ln(omega_1/omega_2), the values obtained from symplectic
        eigenvalues.

    Returns
    -------
    float
        Clamped at 0.
    """
    case = get_case(case)
    if variant not in CLOSED_FORM_VARIANTS:
        raise ConfigError('Unknown closed form variant "{}", use one of {}'.format(variant, CLOSED_FORM_VARIANTS))
    c2, s2 = cfg.c**2, cfg.s**2
    cos2phi, cos4phi = math.cos(2*cfg.phi), math.cos(4*cfg.phi)
    omega0, omega1, omega2 = cfg.omegas
    label = case.label
    if label == '23->1':
        value = 2*math.log(omega2)
    elif label in ('13->2', '2->13'):
        value = 2*math.log(omega0)
    elif label == '12->3':
        value = 2*math.log(omega1)
    elif label == '1->23':
        if variant == 'symplectic':
            value = 2*math.log(omega2)
        else:
            value = _two_mode_log_ratio(*_kappa_terms(s2, c2, cos2phi, cos4phi))
    elif label == '3->12':
        if variant == 'symplectic':
            value = 2*math.log(omega1)
        else:
            # iota terms are the kappa terms with cos(phi) and sin(phi) exchanged
            value = _two_mode_log_ratio(*_kappa_terms(s2, c2, -cos2phi, cos4phi))
    elif label == '2->1':
        value = 2*math.log(omega0/omega1)
    elif label == '2->3':
        value = 2*math.log(omega0/omega2)
    elif label == '1->2' and variant == 'symplectic':
        value = 2*math.log(omega2/omega1)
    elif label == '3->2' and variant == 'symplectic':
        value = 2*math.log(omega1/omega2)
    else:
        # 1->3, 3->1, and 1->2, 3->2 as printed
        value = 0.0
    return max(0.0, value)


def published_eigenvalue_form(cfg, case):
    """Steering-like quantity built from the ordinary eigenvalues of sigma_{B|A}.

    For the two flagged cases this reproduces the printed closed form, which shows the printed
    expression diagonalizes sigma_{B|A} instead of i Omega sigma_{B|A}.
    """
    case = get_case(case)
    cm = c3msv_covariance(cfg)
    partition = case.partition
    cm_ab = sub_cm(cm, partition.modes)
    n_a = len(partition.party_a)
    sigma = schur_complement(cm_ab, Partition(range(n_a), range(n_a, len(partition.modes))))
    return steering_from_nu_bars(np.linalg.eigvalsh(sigma).tolist())


def steering_table(cfg, variant='published', tol=None):
    """All twelve cases by the generic route, each paired with its closed form.

    Returns
    -------
    [SteeringResult]
        In the order of ``CASE_LABELS``. Rows whose published formula is known to be wrong carry
        their ``PUBLISHED_FLAGS`` entry when they disagree.
    """
    cm = c3msv_covariance(cfg)
    results = []
    for case in STEERING_CASES:
        result = gaussian_steering(cm, case.partition, case=case, tol=tol)
        result.closed_form = steering_closed_form(cfg, case, variant)
        if case.label in PUBLISHED_FLAGS and result.deviation > 1e-9:
            result.flag = PUBLISHED_FLAGS[case.label]
        results.append(result)
    return results


def steering_values(cfg, tol=None):
    """Generic steering of the twelve cases as a dict keyed by case label."""
    cm = c3msv_covariance(cfg)
    return {case.label: gaussian_steering(cm, case.partition, case=case, tol=tol).value
            for case in STEERING_CASES}


Deficit = namedtuple('Deficit', ['label', 'value'])

_CYCLES = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


def monogamy_deficits(cfg, values=None):
    """The six monogamy deficits.

    For every cycle (i, j, k) the deficits are G^{(jk)->i} - G^{j->i} - G^{k->i} and
    G^{i->(jk)} - G^{i->j} - G^{i->k}. Both families are nonnegative for a monogamous state.

    Parameters
    ----------
    cfg : SqueezingConfig
    values : dict
        Precomputed ``steering_values(cfg)``.

    Returns
    -------
    [Deficit]
        Steered-side family first (``(jk)->i``), then the steering-side family (``i->(jk)``).
    """
    if values is None:
        values = steering_values(cfg)

    def g(a, b):
        return values['{}->{}'.format(''.join(str(m) for m in sorted(a)), ''.join(str(m) for m in sorted(b)))]

    steered = []
    steering = []
    for i, j, k in _CYCLES:
        pair = ''.join(str(m) for m in sorted((j, k)))
        steered.append(Deficit('({})->{}'.format(pair, i), g((j, k), (i,)) - g((j,), (i,)) - g((k,), (i,))))
        steering.append(Deficit('{}->({})'.format(i, pair), g((i,), (j, k)) - g((i,), (j,)) - g((i,), (k,))))
    return steered + steering


class RgsResult(MSONable):
    """Residual Gaussian steering.

    Parameters
    ----------
    value : float
        Minimum deficit, clamped at 0.
    argmin_permutation : str
        Label of the deficit attaining the minimum.
    all_deficits : [Deficit]
        The six deficits.
    collective : float
        G^{13->2}, the collective steering of the central mode, reported alongside.
    """

    def __init__(self, value, argmin_permutation, all_deficits, collective=None):
        self.value = float(value)
        self.argmin_permutation = argmin_permutation
        self.all_deficits = [Deficit(*d) for d in all_deficits]
        self.collective = collective

    @property
    def family_minima(self):
        return (min(d.value for d in self.all_deficits[:3]), min(d.value for d in self.all_deficits[3:]))


def residual_gaussian_steering(cfg):
    """Residual Gaussian steering: the smallest monogamy deficit over both families.

    Both families are evaluated; a disagreement of their minima beyond 1e-9 is reported with a
    warning. The minimum is 2 ln[(c^2 - s^2 cos 2phi)(c^2 + s^2 cos 2phi)
    / (c^2 + s^2)], largest at phi = pi/4.
    """
    values = steering_values(cfg)
    deficits = monogamy_deficits(cfg, values)
    best = min(deficits, key=lambda d: d.value)
    result = RgsResult(max(0.0, best.value), best.label, deficits, collective=values['13->2'])
    steered_min, steering_min = result.family_minima
    if abs(steered_min - steering_min) > 1e-9:
        warnings.warn('Residual steering families disagree: {:.12g} vs {:.12g} at {!r}'.format(
            steered_min, steering_min, cfg))
    _log.debug('RGS %.12g attained by %s', result.value, best.label)
    return result


def steering_direction(cfg, mode_a, mode_b, tol=1e-12):
    """Classify steering between two single modes (1-based) as none, one-way or two-way."""
    cm = c3msv_covariance(cfg)
    forward = gaussian_steering(cm, Partition.from_modes([mode_a], [mode_b])).value
    backward = gaussian_steering(cm, Partition.from_modes([mode_b], [mode_a])).value
    if forward > tol and backward > tol:
        return 'two-way'
    if forward > tol:
        return 'one-way {}->{}'.format(mode_a, mode_b)
    if backward > tol:
        return 'one-way {}->{}'.format(mode_b, mode_a)
    return 'none'
