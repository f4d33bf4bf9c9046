from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lctcert.errors import InputError
from lctcert.fm import Feasible, Infeasible, constraint, fm_infeasible
from oracles import grid_feasible


def test_trivial_contradiction():
    assert isinstance(fm_infeasible([constraint(["1"], "-1", "<="), constraint(["1"], "-1", ">")]), Infeasible)


def test_boundary_kept_when_not_strict():
    res = fm_infeasible([constraint(["1"], "-1", "<="), constraint(["1"], "-1", ">=")])
    assert isinstance(res, Feasible) and res.witness == (1,)


def test_family_45_system():
    system = [
        constraint(["1", "0"], "0", ">="),
        constraint(["0", "1"], "0", ">="),
        constraint(["1/10", "1/10"], "-1/10", "<="),
        # 1/5 - g1/5 - g2/5 - (1 - g1) > 0
        constraint(["4/5", "-1/5"], "-4/5", ">"),
    ]
    assert isinstance(fm_infeasible(system), Infeasible)


def test_case_4_system():
    system = [
        constraint(["1"], "0", ">="),
        constraint(["-3/2"], "1/2", ">"),
        constraint(["3/2"], "-1/2", ">"),
    ]
    assert isinstance(fm_infeasible(system), Infeasible)


def test_equality_relation():
    res = fm_infeasible([constraint(["1", "1"], "-1", "="), constraint(["1", "-1"], "0", "=")])
    assert isinstance(res, Feasible) and res.witness == (Fraction(1, 2), Fraction(1, 2))


def test_limits():
    with pytest.raises(InputError):
        fm_infeasible([constraint(["1"] * 4, "0", ">=")])
    with pytest.raises(InputError):
        fm_infeasible([constraint(["1"], "0", ">=")] * 17)
    with pytest.raises(InputError):
        fm_infeasible([constraint(["1"], "0", ">="), constraint(["1", "1"], "0", ">=")])
    with pytest.raises(InputError):
        constraint(["1"], "0", "!=")


small = st.integers(-3, 3)
rels = st.sampled_from([">", ">=", "<=", "<"])
systems = st.lists(st.tuples(small, small, small, rels), min_size=1, max_size=5)


@settings(max_examples=100, deadline=None)
@given(systems)
def test_matches_grid_oracle(raw):
    res = fm_infeasible([constraint([a, b], c, rel) for a, b, c, rel in raw])
    if grid_feasible(raw):
        # the grid found a point, so elimination must agree
        assert isinstance(res, Feasible)
    if isinstance(res, Feasible):
        assert all(constraint([a, b], c, rel).holds(res.witness) for a, b, c, rel in raw)
