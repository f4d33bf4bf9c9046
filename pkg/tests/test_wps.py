from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from lctcert.errors import InputError
from oracles import brute_force_count, generating_function_count
from lctcert.wps import (
    anticanonical_degree_wci,
    h0_anticanonical,
    is_representable,
    monomials_of_degree,
    space_from_weights,
    validate_space,
)


@pytest.mark.parametrize("weights,wf", [
    ((1, 1, 2, 2, 2, 3), True),
    ((2, 2, 4), False),
    ((1, 5, 6, 7, 8, 9, 10), True),
    ((1, 6, 10, 15), True),
])
def test_well_formed(weights, wf):
    assert space_from_weights(weights).well_formed is wf


def test_validation_errors():
    with pytest.raises(InputError):
        space_from_weights((0, 1, 2))
    with pytest.raises(InputError):
        validate_space([("x", 1), ("x", 2)])
    with pytest.raises(InputError):
        validate_space([])


def test_sorted_by_weight_keeps_display_order():
    sp = validate_space([("u", 3), ("x", 1), ("y", 1)])
    assert sp.names == ("x", "y", "u")
    assert [n for n, _ in sp.display] == ["u", "x", "y"]
    assert sp.weight("u") == 3
    with pytest.raises(InputError):
        sp.weight("q")


def test_monomials_two_variables():
    ms = monomials_of_degree(space_from_weights((1, 1)), 3)
    assert [str(m) for m in ms] == ["x^3", "x^2*y", "x*y^2", "y^3"]



def test_monomials_family_8_degree_3():
    sp = space_from_weights((1, 1, 2, 2, 2, 3))
    assert len(monomials_of_degree(sp, 3)) == 11 == brute_force_count((1, 1, 2, 2, 2, 3), 3)


def test_degree_zero_and_errors():
    sp = space_from_weights((2, 3, 4, 5, 6, 7))
    assert [str(m) for m in monomials_of_degree(sp, 0)] == ["1"]
    with pytest.raises(InputError):
        monomials_of_degree(sp, -1)



@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 7), min_size=1, max_size=5), st.integers(0, 30))
def test_monomial_count_matches_generating_function(weights, d):
    ms = monomials_of_degree(space_from_weights(weights), d)
    assert len(ms) == generating_function_count(weights, d)
    assert len(set(m.exponents for m in ms)) == len(ms)
    for m in ms:
        assert sum(e * w for e, w in zip(m.exponents, sorted(weights))) == d


def test_uniform_weights_binomial():
    for n in range(1, 5):
        for d in range(6):
            assert len(monomials_of_degree(space_from_weights([1] * n), d)) == comb(n + d - 1, d)


def test_representable():
    assert is_representable(8, (3, 6)) is False
    assert is_representable(6, (3, 6)) is True
    assert is_representable(0, (5,)) is True
    assert is_representable(-1, (1,)) is False


def test_degrees():
    assert anticanonical_degree_wci(space_from_weights((1, 1, 2, 2, 2, 3)), 4, 6) == 1
    assert anticanonical_degree_wci(space_from_weights((1, 8, 9, 10, 12, 15)), 24, 30) == Fraction(1, 180)
    assert anticanonical_degree_wci(space_from_weights((1, 1, 1, 1, 1, 1)), 2, 3) == 6


def test_h0():
    assert h0_anticanonical(space_from_weights((1, 1, 2, 2, 2, 3))) == 2
    assert h0_anticanonical(space_from_weights((2, 3, 4, 5, 6, 7))) == 0
    assert h0_anticanonical(space_from_weights((1, 5, 6, 7, 8, 9, 10))) == 1
