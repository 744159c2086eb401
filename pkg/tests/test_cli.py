import io
import json

import pytest

from modunits.cli import MethodResult, Report, run
from modunits.order import OrderValue


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_vstar_json_round_trip():
    code, text = call("vstar", "D8", "--format", "json")
    assert code == 0
    rec = json.loads(text)
    assert rec["agreement"] and rec["order"] == 8
    for m in ("brute", "recursion", "formula"):
        v = rec["methods"][m]
        assert v["status"] == "exact" and v["value"]["log2"] == 6


def test_vstar_table_output():
    code, text = call("vstar", "M2(2,2)", "--field", "4", "--method", "recursion")
    assert code == 0 and "recursion" in text and "agreement False" in text


@pytest.mark.parametrize(
    "argv",
    [("vstar", "M2(1,2)"), ("vstar", "D8 x"), ("vstar", "D8", "--field", "3"), ("frobnicate",),
     ("classify", "--theorem", "ST1", "--case", "i", "--params", "n=1,m=3"), ("classify", "--theorem", "ST1", "--case", "i", "--params", "z=1")],
)
def test_usage_errors_exit_two(argv):
    assert call(*argv)[0] == 2


def test_disagreement_exits_one():
    code, text = call("vstar", "Q8 . Z4 x Z2", "--budget", str(1 << 31), "--format", "json")
    rec = json.loads(text)
    assert code == 1 and not rec["agreement"]


def test_budget_skip_is_reported():
    code, text = call("vstar", "D8 . D8", "--budget", "1000", "--format", "json")
    rec = json.loads(text)
    assert code == 0 and rec["methods"]["brute"]["status"] == "skipped"


def test_agreement_needs_two_exact_results():
    v = OrderValue(2, 0, 6)
    rep = Report("D8", 8, 2, {})
    rep.methods = {"brute": MethodResult("exact", v), "recursion": MethodResult("unsupported"), "formula": MethodResult("skipped")}
    assert not rep.agreement and not rep.disagreement
    rep.methods["formula"] = MethodResult("exact", v)
    assert rep.agreement
    rep.methods["recursion"] = MethodResult("upper-bound", OrderValue(2, 0, 5))
    assert rep.disagreement


def test_group_and_classify():
    code, text = call("group", "Q8 . D8", "--format", "json")
    assert code == 0 and json.loads(text)["omega1"] == 12
    code, text = call("classify", "--theorem", "ST1", "--case", "ix", "--params", "n=1,m=1,k=1", "--format", "json")
    rec = json.loads(text)
    assert code == 0 and all(v for k, v in rec["shape"].items() if k.endswith("_ok"))


def test_verify_small_suite():
    code, text = call("verify", "--suite", "grid", "--format", "json")
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and rows and all(r["ok"] for r in rows)
