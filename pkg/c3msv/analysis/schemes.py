"""
Catalogue of the eighteen remote photon-subtraction schemes.

A tag such as ``1a3|2`` reads: the modes before the bar (1 and 3) belong to the steering party and
are traced out; the ones marked ``a`` (mode 1) have a photon subtracted first; the modes after the
bar (2) form the remotely prepared state.
"""

from __future__ import division

import math

from monty.json import MSONable

from c3msv.errors import ConfigError
from c3msv.utils import parse_scheme_tag

# tag -> closed form id, in the order the schemes are grouped by steering party
SCHEME_CLOSED_FORMS = {
    '1a|23': 'C2', '1a|2': 'C8', '1a|3': 'C12',
    '3a|12': 'C4', '3a|1': 'C9', '3a|2': 'C10',
    '2a|13': 'C3', '2a|1': 'C11', '2a|3': 'C13',
    '1a3a|2': 'C6', '1a3|2': 'C8', '13a|2': 'C10',
    '2a3a|1': 'C5', '2a3|1': 'C11', '23a|1': 'C9',
    '1a2a|3': 'C7', '1a2|3': 'C12', '12a|3': 'C13',
}

SCHEME_TAGS = ('1a|23', '1a|2', '1a|3', '3a|12', '3a|1', '3a|2', '2a|13', '2a|1', '2a|3',
               '1a3a|2', '1a3|2', '13a|2', '2a3a|1', '2a3|1', '23a|1', '1a2a|3', '1a2|3', '12a|3')

# the schemes whose remote state keeps a nonnegative Wigner function for every (n_T, phi)
ZERO_NEGATIVITY_SCHEMES = ('2a3a|1', '23a|1', '1a2a|3', '1a2|3')

# nonnegative only on part of the phi range: 2a3|1 shares its state with 2a|1, 12a|3 with 2a|3
PARTIAL_ZERO_NEGATIVITY_SCHEMES = {'2a3|1': (math.pi/4, math.pi/2), '12a|3': (0.0, math.pi/4)}


def _canonical_tag(steered, subtracted, kept):
    head = ''.join('{}{}'.format(m, 'a' if m in subtracted else '') for m in steered)
    return '{}|{}'.format(head, ''.join(str(m) for m in kept))


class SubtractionScheme(MSONable):
    """One remote photon-subtraction scheme.

    Parameters
    ----------
    tag : str
        Scheme tag, ``|`` or ``_`` as separator (``1a3|2`` or ``1a3_2``).

    Attributes
    ----------
    steered_modes : tuple
        1-based modes of the steering party. They are traced out together with any mode that
        appears on neither side of the tag.
    subtracted_modes : tuple
        1-based modes acted on by an annihilation operator.
    kept_modes : tuple
        1-based modes of the remote reduced state.
    closed_form : str
        Identifier (``'C2'`` ... ``'C13'``) of the Gaussian-times-polynomial Wigner function.
    """

    def __init__(self, tag):
        steered, subtracted, kept = parse_scheme_tag(tag)
        modes = steered + kept
        if len(set(modes)) != len(modes) or not kept or not subtracted or not set(subtracted) <= set(steered):
            raise ConfigError('"{}" is not a subtraction scheme on three modes'.format(tag))
        self.tag = _canonical_tag(steered, subtracted, kept)
        if self.tag not in SCHEME_CLOSED_FORMS:
            raise ConfigError('Unknown subtraction scheme "{}", use one of {}'.format(tag, ', '.join(SCHEME_TAGS)))
        self.steered_modes = tuple(steered)
        self.subtracted_modes = tuple(subtracted)
        self.kept_modes = tuple(kept)
        self.closed_form = SCHEME_CLOSED_FORMS[self.tag]

    @property
    def traced_modes(self):
        """Every mode outside the remote state, including a mode no party holds."""
        return tuple(m for m in (1, 2, 3) if m not in self.kept_modes)

    @property
    def n_kept(self):
        return len(self.kept_modes)

    def published_prefactor(self, cfg):
        """Normalization constant multiplying a...rho a^dag in the published construction.

        It is the inverse of <a^dag... a...> on the C3MSV: |eps_j|^-2 and s^-2 for single
        subtractions, (|eps1 eps2|^2 / 2)^-1 for modes 1 and 3 together, and (c^2 + s^2)^-1 |eps_j|^-2
        when the central mode is one of two subtracted modes.
        """
        eps = {1: abs(cfg.epsilon1)**2, 2: cfg.s**2, 3: abs(cfg.epsilon2)**2}
        subtracted = set(self.subtracted_modes)
        if len(subtracted) == 1:
            norm = eps[self.subtracted_modes[0]]
        elif subtracted == {1, 3}:
            norm = 2*eps[1]*eps[3]
        else:
            outer = (subtracted - {2}).pop()
            norm = (cfg.c**2 + cfg.s**2)*eps[outer]
        if norm == 0:
            return float('inf')
        return 1/norm

    def __eq__(self, other):
        if not isinstance(other, SubtractionScheme):
            return NotImplemented
        return self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return 'SubtractionScheme({})'.format(self.tag)


SUBTRACTION_SCHEMES = tuple(SubtractionScheme(tag) for tag in SCHEME_TAGS)


def get_scheme(scheme):
    """Return the SubtractionScheme for a tag or pass a SubtractionScheme through."""
    if isinstance(scheme, SubtractionScheme):
        return scheme
    return SubtractionScheme(scheme)


def schemes_for_closed_form(form_id):
    """All scheme tags sharing one closed-form Wigner function."""
    return tuple(tag for tag in SCHEME_TAGS if SCHEME_CLOSED_FORMS[tag] == form_id)
