from fractions import Fraction

import pytest

from lctcert.blowup import BlowupContext, BlowupDivisorClass
from lctcert.errors import InputError
from lctcert.predicates import (
    check_exclG,
    check_exclL,
    check_numeric,
    check_singpt_cone,
    check_singpt_cover,
    check_singpt_nef,
    mult_bound_wps,
)
from lctcert.records import Citation, GeometricFact
from lctcert.results import Status
from lctcert.singularities import normalize_quotient_type

CITE = Citation("test", "test")
HALF = normalize_quotient_type(2, (1, 1, 1))


def fact(fid, kind, target=None, bound=None, **subject):
    if target is not None:
        subject["target"] = target
    return GeometricFact(fid, kind, subject, CITE, Fraction(bound) if bound is not None else None)


def excl_l_facts(c1, c2):
    return [fact("s", "mult_bound", "H_x", c1), fact("g", "irreducible_reduced", "L"),
            fact("m", "mult_bound", "L", c2)]


def test_exclL():
    res = check_exclL(1, 1, 1, excl_l_facts(1, 1), s1="H_x", gamma="L")
    assert res.status is Status.PASS and res.tight and res.values["lhs"] == 1
    res = check_exclL(1, 2, Fraction(1, 6), excl_l_facts(1, 2), s1="H_x", gamma="L")
    assert res.status is Status.PASS and res.values["lhs"] == Fraction(1, 3) and not res.tight
    assert check_exclL(1, 1, 2, excl_l_facts(1, 1), s1="H_x", gamma="L").status is Status.FAIL


def test_exclL_fact_gating():
    res = check_exclL(1, 1, 1, [], s1="H_x", gamma="L")
    assert res.status is Status.INDETERMINATE and len(res.missing_facts) == 3
    # a bound weaker than the one claimed does not count
    res = check_exclL(1, 1, 1, excl_l_facts(2, 1), s1="H_x", gamma="L")
    assert res.status is Status.INDETERMINATE
    # arithmetic failure wins over missing facts
    assert check_exclL(2, 2, 1, [], s1="H_x", gamma="L").status is Status.FAIL


def test_exclG():
    iso = fact("iso", "finiteness", "proj")
    res = check_exclG(3, 1, Fraction(1, 3), [fact("s", "mult_bound", "H_x", 1), iso], s="H_x", isolating="proj")
    assert res.status is Status.PASS and res.tight
    pair = [fact("a", "irreducible_reduced", "H_x"), fact("b", "irreducible_reduced", "H_y"), iso]
    res = check_exclG(10, (2, 3), Fraction(1, 30), pair, pair=("H_x", "H_y"), isolating="proj")
    assert res.status is Status.PASS and res.values["lhs"] == 1
    res = check_exclG(15, 2, Fraction(1, 30), [fact("s", "mult_bound", "H_x", 2), iso], s="H_x")
    assert res.status is Status.PASS and res.values["lhs"] == 1
    assert check_exclG(3, 1, Fraction(1, 3), [fact("s", "mult_bound", "H_x", 1)], s="H_x").status \
        is Status.INDETERMINATE
    with pytest.raises(InputError):
        check_exclG(0, 1, 1, [])


def test_singpt_cone():
    facts = [fact("c", "cone_boundary"), fact("h", "proper_transform_class", multiple="1")]
    assert check_singpt_cone(facts).status is Status.PASS
    res = check_singpt_cone([fact("h", "proper_transform_class", multiple="2")])
    assert res.status is Status.INDETERMINATE
    assert check_singpt_cone([]).status is Status.INDETERMINATE


def nef_fact(alpha, e):
    return fact("n", "nef", **{"class": [str(alpha), str(e)]})


def test_singpt_nef_family_60():
    ctx = BlowupContext(HALF, Fraction(1, 30))
    n = BlowupDivisorClass(5, 1)
    res = check_singpt_nef(ctx, n, [(2, 2), (3, 1)], [nef_fact(5, 1)])
    assert res.status is Status.PASS
    assert (res.values["lhs1"], res.values["rhs1"]) == (Fraction(8, 3), 8)
    assert (res.values["lhs2"], res.values["rhs2"]) == (4, 4) and res.tight
    res = check_singpt_nef(ctx, n, [(3, 1), (4, 2)], [nef_fact(5, 1)])
    assert res.status is Status.PASS
    assert (res.values["lhs2"], res.values["rhs2"]) == (Fraction(16, 3), 8)


def test_singpt_nef_scaled_fails():
    ctx = BlowupContext(HALF, Fraction(1, 15))
    res = check_singpt_nef(ctx, BlowupDivisorClass(5, 1), [(2, 2), (3, 1)], [nef_fact(5, 1)])
    assert res.status is Status.FAIL and res.values["lhs2"] == 8


def test_singpt_nef_needs_fact_and_two_divisors():
    ctx = BlowupContext(HALF, Fraction(1, 30))
    n = BlowupDivisorClass(5, 1)
    assert check_singpt_nef(ctx, n, [(2, 2), (3, 1)], [nef_fact(4, 1)]).status is Status.INDETERMINATE
    with pytest.raises(InputError):
        check_singpt_nef(ctx, n, [(2, 2)], [])
    with pytest.raises(InputError):
        check_singpt_nef(ctx, n, [(2, 2), (3, 1)], [], epsilon=0)


def test_singpt_cover():
    facts = [fact("o", "ord_bound", "H_x", Fraction(1, 2)), fact("c", "cover_mult_bound", "L", 1)]
    res = check_singpt_cover(2, 1, 1, Fraction(1, 2), facts, s1="H_x", curve="L")
    assert res.status is Status.PASS and res.tight


@pytest.mark.parametrize("m,e,n", [(7, 2, 4), (9, 4, 3), (1, 2, 1), (9, 3, 3)])
def test_mult_bound_wps(m, e, n):
    assert mult_bound_wps(m, e) == n


def test_mult_bound_wps_rejects_small_e():
    with pytest.raises(InputError):
        mult_bound_wps(5, 1)


def test_numeric():
    res = check_numeric([["12", "7", "A3"]], "<", [["3"]], Fraction(1, 30))
    assert res.status is Status.PASS and res.values["lhs"] == Fraction(14, 5)
    assert check_numeric([["2", "3", "A3"]], "=", [["2"]], Fraction(1, 3)).status is Status.PASS
    assert check_numeric([["1"], ["1"]], ">", [["2"]], 1).status is Status.FAIL
    with pytest.raises(InputError):
        check_numeric([["1"]], "!=", [["1"]], 1)
