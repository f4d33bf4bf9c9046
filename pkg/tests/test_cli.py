import csv
import io
import json

import pytest

from lctcert.cli import run
from lctcert.famdb import DATA_ENV, default_data_path


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_certify_all():
    code, out, _ = call("certify", "--all")
    assert code == 0
    assert "certificates: 21/21 LCT_GE_1" in out


def test_certify_all_json_stable():
    code, first, _ = call("certify", "--all", "--format", "json")
    _, second, _ = call("certify", "--all", "--format", "json")
    assert code == 0 and first == second
    doc = json.loads(first)
    assert len(doc["certificates"]) == 21
    assert doc["summary"]["indeterminate"] == 0
    assert "generated" not in doc


def test_verbose_json_adds_metadata():
    _, out, _ = call("certify", "84", "--format", "json", "--verbose")
    doc = json.loads(out)
    assert "generated" in doc and len(doc["dataset"]["checksum"]) == 64


def test_strict_family_8():
    assert call("certify", "8")[0] == 0
    assert call("certify", "8", "--strict")[0] == 1


def test_tables_degrees():
    code, out, _ = call("tables", "--which", "degrees", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 18
    assert all(r["status"] == "PASS" for r in rows)


@pytest.mark.parametrize("which", ["baskets", "isolating", "qi"])
def test_tables_other(which):
    assert call("tables", "--which", which)[0] == 0


def test_basket_71_strict():
    code, out, _ = call("basket", "71", "--strict")
    assert code == 1
    assert "1/4(1,1,3): computed 2, printed 3" in out


def test_basket_71_markdown():
    code, out, _ = call("basket", "71", "--format", "md")
    assert code == 0 and out.startswith("## `basket 71`")


def test_isolate():
    assert call("isolate", "85")[0] == 0
    assert call("isolate", "Pf-1/42")[0] == 0
    code, _, err = call("isolate", "8")
    assert code == 2 and "no isolating-class entries" in err


def test_input_errors():
    assert call("certify", "999")[0] == 2
    assert call("certify")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("validate", "--data", "/no/such/file.json")[0] == 2


def test_validate():
    code, out, _ = call("validate")
    assert code == 0 and "0 fail" in out


def test_env_data_path(monkeypatch, tmp_path):
    doc = json.loads(default_data_path().read_bytes())
    # the fact stays in the store but the plan no longer cites it
    fam = next(f for f in doc["families"] if f["id"] == 84)
    for entry in fam["plan"]:
        entry["facts"] = [x for x in entry["facts"] if x != "84.Hx.mult"]
    path = tmp_path / "data.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv(DATA_ENV, str(path))
    code, out, _ = call("certify", "84")
    assert code == 3 and "NOT_ESTABLISHED" in out
    assert call("certify", "84", "--strict")[0] == 1
