"""
Tests of the subtraction scheme catalogue.
"""

import math

import pytest

from c3msv.errors import ConfigError
from c3msv.gaussian.squeezing import SqueezingConfig
from c3msv.analysis.schemes import (SCHEME_TAGS, SCHEME_CLOSED_FORMS, SUBTRACTION_SCHEMES, ZERO_NEGATIVITY_SCHEMES,
                                    PARTIAL_ZERO_NEGATIVITY_SCHEMES, SubtractionScheme, get_scheme,
                                    schemes_for_closed_form)

BISYMMETRIC_CFG = SqueezingConfig.from_nbar(2, math.pi/4)


def test_catalogue_has_eighteen_schemes_and_twelve_forms():
    """Eighteen tags map onto the twelve closed forms C2 to C13."""
    assert len(SCHEME_TAGS) == 18
    assert set(SCHEME_TAGS) == set(SCHEME_CLOSED_FORMS)
    assert set(SCHEME_CLOSED_FORMS.values()) == {'C{}'.format(i) for i in range(2, 14)}
    assert all(scheme.tag == tag for scheme, tag in zip(SUBTRACTION_SCHEMES, SCHEME_TAGS))
    assert set(ZERO_NEGATIVITY_SCHEMES) <= set(SCHEME_TAGS)
    assert not set(ZERO_NEGATIVITY_SCHEMES) & set(PARTIAL_ZERO_NEGATIVITY_SCHEMES)
    assert set(PARTIAL_ZERO_NEGATIVITY_SCHEMES) <= set(SCHEME_TAGS)


def test_every_scheme_covers_three_modes():
    """Kept and traced modes partition the three modes and only steering modes are subtracted."""
    for scheme in SUBTRACTION_SCHEMES:
        assert sorted(scheme.traced_modes + scheme.kept_modes) == [1, 2, 3]
        assert not set(scheme.steered_modes) & set(scheme.kept_modes)
        assert set(scheme.steered_modes) <= set(scheme.traced_modes)
        assert set(scheme.subtracted_modes) <= set(scheme.steered_modes)


def test_single_kept_mode_schemes_trace_the_unnamed_mode():
    """In 1a|2 mode 3 belongs to neither party and is traced out with mode 1."""
    scheme = get_scheme('1a|2')
    assert scheme.steered_modes == (1,)
    assert scheme.kept_modes == (2,)
    assert scheme.traced_modes == (1, 3)
    assert get_scheme('3a|12').traced_modes == (3,)
    assert get_scheme('2a3|1').traced_modes == (2, 3)
    single = [scheme.tag for scheme in SUBTRACTION_SCHEMES if len(scheme.steered_modes) == 1 and scheme.n_kept == 1]
    assert single == ['1a|2', '1a|3', '3a|1', '3a|2', '2a|1', '2a|3']


def test_tags_are_canonicalized():
    """Underscore separators are accepted and normalized to the bar."""
    scheme = get_scheme('1a3_2')
    assert scheme.tag == '1a3|2'
    assert scheme.subtracted_modes == (1,)
    assert scheme.kept_modes == (2,)
    assert scheme.closed_form == 'C8'
    assert get_scheme(scheme) is scheme
    assert SubtractionScheme('2a3a|1') == get_scheme('2a3a_1')
    assert len({SubtractionScheme('1a|2'), SubtractionScheme('1a_2')}) == 1


def test_two_mode_schemes():
    """Only single subtractions leaving two modes keep a two-mode state."""
    two_mode = [scheme.tag for scheme in SUBTRACTION_SCHEMES if scheme.n_kept == 2]
    assert two_mode == ['1a|23', '3a|12', '2a|13']


@pytest.mark.parametrize('tag', ['1a|1', '13|2', '1a2a3a|', '4a|12', '1a2a|13', '1a1|2', '12a|'])
def test_invalid_tags_raise(tag):
    """Repeated or unknown modes, a missing subtraction and an empty kept side are rejected."""
    with pytest.raises(ConfigError):
        SubtractionScheme(tag)


def test_schemes_sharing_a_closed_form():
    """Schemes are grouped by the closed form of their remote state."""
    assert schemes_for_closed_form('C8') == ('1a|2', '1a3|2')
    assert schemes_for_closed_form('C6') == ('1a3a|2',)
    assert schemes_for_closed_form('C1') == ()


def test_published_prefactors():
    """Inverse of <a^dag ... a ...> on the state, at s^2 = 1 and phi = pi/4 where |eps_j|^2 = 1/2."""
    assert get_scheme('1a|2').published_prefactor(BISYMMETRIC_CFG) == pytest.approx(2)
    assert get_scheme('2a|13').published_prefactor(BISYMMETRIC_CFG) == pytest.approx(1)
    assert get_scheme('1a3a|2').published_prefactor(BISYMMETRIC_CFG) == pytest.approx(2)
    assert get_scheme('1a2a|3').published_prefactor(BISYMMETRIC_CFG) == pytest.approx(2/3)


def test_prefactor_is_infinite_for_a_vacuum_mode():
    """Subtracting from an empty mode has no finite normalization."""
    assert get_scheme('3a|12').published_prefactor(SqueezingConfig.from_nbar(3, 0.0)) == float('inf')


def test_partially_nonnegative_schemes_share_a_state_with_a_single_subtraction():
    """2a3|1 and 12a|3 reuse the states of 2a|1 and 2a|3."""
    assert get_scheme('2a3|1').closed_form == get_scheme('2a|1').closed_form
    assert get_scheme('12a|3').closed_form == get_scheme('2a|3').closed_form
