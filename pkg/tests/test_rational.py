from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lctcert.errors import InputError
from lctcert.rational import fmt, is_canonical_rational, parse_rational


@pytest.mark.parametrize("text,value", [("1/30", Fraction(1, 30)), ("7", Fraction(7)), ("-5/3", Fraction(-5, 3))])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1/", "", "a/b", 0.5, True, None])
def test_parse_rejects(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


def test_fmt_integers_drop_denominator():
    assert fmt(Fraction(4, 2)) == "2"
    assert fmt(Fraction(-10, 6)) == "-5/3"


def test_canonical():
    assert is_canonical_rational("1/180")
    assert not is_canonical_rational("2/4")
    assert not is_canonical_rational("3/1")


@given(st.fractions())
def test_round_trip(q):
    assert parse_rational(fmt(q)) == q
    assert is_canonical_rational(fmt(q))
