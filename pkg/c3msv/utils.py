"""Shared helpers: package defaults, small grammars for the strings users type, log-factorials.

The grammars accept the notations used on the command line and in JSON config files:

* grids ``"0:1.5708:33"`` (start, stop, number of points), ``"0.1,0.2,0.5"`` or a single number
* angle fractions ``"1/8"`` meaning pi/8
* steering cases ``"23->1"``, ``"23to1"`` or ``"23→1"``
* subtraction schemes ``"1a3|2"`` or ``"1a3_2"``
* moment specs ``"k1,k2,k3,l1,l2,l3"``
"""

from __future__ import division

import math

import numpy as np
from pyparsing import (Regex, Word, nums, Group, OneOrMore, Optional, Suppress, Literal,
                       StringEnd, ParseException, delimitedList)
from scipy.special import gammaln

from c3msv.errors import ConfigError

DEFAULTS = {
    # quadrature for the Wigner negativity
    'half_width': 8.0,
    'points_per_dim': 96,
    'quad_tol': 1e-5,
    'max_refinements': 5,
    # Fock oracle
    'defect_budget': 1e-8,
    # steering
    'steering_tol': 1e-12,
    'condition_limit': 1e12,
    # decoherence
    'bisection_tol': 1e-8,
    # output
    'float_format': '%.12g',
}

_float_number = Regex(r'[-+]?[0-9]*\.?[0-9]+([eE][-+]?[0-9]+)?').setParseAction(lambda t: [float(t[0])])
_integer = Word(nums).setParseAction(lambda t: [int(t[0])])

_range_grid = _float_number + Suppress(':') + _float_number + Suppress(':') + _integer
_list_grid = delimitedList(_float_number)
_grid_grammar = (Group(_range_grid)('range') | Group(_list_grid)('values')) + StringEnd()

_fraction_grammar = Optional(_integer, default=1) + Suppress('/') + _integer + StringEnd()

_modes = Word('123')
_arrow = Suppress(Literal('->') | Literal('to') | Literal(u'→'))
_case_grammar = _modes('a') + _arrow + _modes('b') + StringEnd()

_scheme_mode = Group(Word('123', exact=1) + Optional(Literal('a'), default=''))
_scheme_grammar = Group(OneOrMore(_scheme_mode))('b') + Suppress(Literal('|') | Literal('_')) + _modes('a') + StringEnd()

_moment_grammar = _integer + 5 * (Suppress(',') + _integer) + StringEnd()


def parse_grid(text):
    """Parse a grid string into a 1D float array.

    Parameters
    ----------
    text : str
        ``"start:stop:n"`` for ``n`` evenly spaced points including both ends, a comma separated
        list, or a single number.

    Returns
    -------
    numpy.ndarray
    """
    try:
        parsed = _grid_grammar.parseString(str(text).strip())
    except ParseException as e:
        raise ConfigError('Cannot parse grid "{}": {}'.format(text, e))
    if 'range' in parsed:
        start, stop, num = parsed['range']
        if num < 1:
            raise ConfigError('Grid "{}" must have at least one point'.format(text))
        return np.linspace(start, stop, num)
    return np.array(list(parsed['values']), dtype=float)


def parse_phi_fraction(text):
    """Return k*pi/n for a string ``"k/n"`` (``"/8"`` is read as ``"1/8"``)."""
    try:
        k, n = _fraction_grammar.parseString(str(text).strip())
    except ParseException as e:
        raise ConfigError('Cannot parse angle fraction "{}": {}'.format(text, e))
    if n == 0:
        raise ConfigError('Angle fraction "{}" has a zero denominator'.format(text))
    return k*math.pi/n


def parse_case_label(text):
    """Split a steering case label into 1-based (party_a, party_b) mode tuples."""
    try:
        parsed = _case_grammar.parseString(str(text).strip())
    except ParseException as e:
        raise ConfigError('Cannot parse steering case "{}": {}'.format(text, e))
    party_a = tuple(int(ch) for ch in parsed['a'])
    party_b = tuple(int(ch) for ch in parsed['b'])
    return party_a, party_b


def parse_scheme_tag(text):
    """Split a subtraction scheme tag into its parts.

    Returns
    -------
    tuple
        ``(steered, subtracted, kept)`` where ``steered`` is the ordered tuple of the 1-based modes
        written before the bar, ``subtracted`` the subset marked with ``a`` and ``kept`` the modes
        written after the bar.
    """
    try:
        parsed = _scheme_grammar.parseString(str(text).strip())
    except ParseException as e:
        raise ConfigError('Cannot parse subtraction scheme "{}": {}'.format(text, e))
    steered = tuple(int(mode) for mode, _ in parsed['b'])
    subtracted = tuple(int(mode) for mode, mark in parsed['b'] if mark == 'a')
    kept = tuple(int(ch) for ch in parsed['a'])
    return steered, subtracted, kept


def parse_moment_spec(text):
    """Parse ``"k1,k2,k3,l1,l2,l3"`` into ((k1, k2, k3), (l1, l2, l3))."""
    try:
        powers = list(_moment_grammar.parseString(str(text).strip()))
    except ParseException as e:
        raise ConfigError('Cannot parse moment spec "{}": {}'.format(text, e))
    return tuple(powers[:3]), tuple(powers[3:])


def check_monotone(grid, name='grid'):
    """Raise ConfigError unless ``grid`` is nonempty and strictly increasing."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ConfigError('{} is empty'.format(name))
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ConfigError('{} must be strictly increasing, got {}'.format(name, grid.tolist()))
    return grid


def log_factorial(n):
    """Natural log of n! for scalars or arrays of nonnegative integers."""
    return gammaln(np.asarray(n, dtype=float) + 1.0)
