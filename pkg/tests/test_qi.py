from dataclasses import replace
from fractions import Fraction

import pytest

from lctcert.errors import InputError
from lctcert.qi import qi_subchecks, qi_verify
from lctcert.results import Status

QI_FAMILIES = {8: 4, 20: 6, 24: 4, 31: 8, 37: 6}


@pytest.mark.parametrize("fid,n_g", QI_FAMILIES.items())
def test_all_subchecks_pass(db, fid, n_g):
    subs = {r.name: r for r in qi_subchecks(db.family(fid))}
    assert all(r.status is Status.PASS for r in subs.values())
    assert subs["qi(b) n_G = 2 a_i1"].values["2a_i1"] == n_g
    assert subs["qi(c) n_G = 2 B^2E / B^3"].values["2B2E/B3"] == n_g
    assert qi_verify(db.family(fid)).status is Status.PASS


def test_family_8_values(db):
    subs = {r.name: r.values for r in qi_subchecks(db.family(8))}
    c = subs["qi(c) n_G = 2 B^2E / B^3"]
    assert (c["B3"], c["B2E"]) == (Fraction(1, 2), 1)
    assert subs["qi(a) degrees"]["a_xi+a_i1"] == 4 and subs["qi(a) degrees"]["2a_zeta"] == 6


def test_family_24_budget(db):
    v = qi_subchecks(db.family(24))[-1].values
    assert v["Theta.Xi"] == Fraction(7, 3) and v["1+mult"] == 3 and v["n_G-1"] == 3


def test_family_31_values(db):
    subs = {r.name: r.values for r in qi_subchecks(db.family(31))}
    assert subs["qi(c) n_G = 2 B^2E / B^3"]["B3"] == Fraction(1, 12)
    assert subs["qi(a) exceptional divisor"]["E3"] == Fraction(16, 3)
    assert subs["qi(d) multiplicity budget"]["N"] == 3


def test_broken_record_names_subcheck(db):
    fam = db.family(20)
    broken = replace(fam, qi_record=replace(fam.qi_record, n_g=8))
    res = qi_verify(broken)
    assert res.status is Status.FAIL and "qi(b)" in res.note


def test_no_record(db):
    with pytest.raises(InputError):
        qi_subchecks(db.family(84))
