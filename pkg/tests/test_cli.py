import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from exunits.cli import PHI_COLUMNS, TABLE_COLUMNS, VERIFY_COLUMNS, main

RESULT_SCHEMA = {
    "oneOf": [
        {"type": "object", "properties": {"exact": {"type": "integer", "minimum": 0}},
         "required": ["exact"], "additionalProperties": False},
        {"type": "object",
         "properties": {"bounds": {"type": "array", "items": {"type": "integer", "minimum": 0},
                                   "minItems": 2, "maxItems": 2}},
         "required": ["bounds"], "additionalProperties": False},
    ]
}
PHI_SCHEMA = {
    "type": "object",
    "properties": {
        "ring": {"type": "string"},
        "element": {"type": "string"},
        "k": {"type": "integer", "minimum": 2},
        "method": {"enum": ["auto", "formula", "oracle"]},
        "result": RESULT_SCHEMA,
        "provenance": {"type": "string"},
        "residue_class": {"type": ["string", "null"]},
        "elapsed_ms": {"type": "number", "minimum": 0},
    },
    "required": ["ring", "element", "k", "method", "result", "provenance", "residue_class", "elapsed_ms"],
    "additionalProperties": False,
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def phi_json(capsys, *argv):
    code, out, _ = run(capsys, "phi", "--format", "json", *argv)
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, PHI_SCHEMA)
    return report


def test_phi_examples(capsys):
    r = phi_json(capsys, "--ring", "Zn:9", "--k", "2", "--element", "0")
    assert r["result"] == {"exact": 1458} and r["provenance"] == "OddTheorem(zero)"
    r = phi_json(capsys, "--ring", "Zn:4", "--k", "2", "--element", "1")
    assert r["result"] == {"exact": 0}
    r = phi_json(capsys, "--ring", "Zn:15", "--k", "2", "--element", "0")
    assert r["result"] == {"exact": 5040} and r["provenance"] == "ProductRule"


def test_phi_bounds_output(capsys):
    r = phi_json(capsys, "--ring", "GF:3^2", "--element", "[[0,1],[1,0]]", "--method", "formula")
    assert r["result"] == {"bounds": [729, 5049]}


def test_phi_csv_and_text(capsys, tmp_path):
    code, out, _ = run(capsys, "phi", "--ring", "Zn:9", "--element", "0", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and list(rows[0]) == PHI_COLUMNS and rows[0]["lo"] == "1458"
    code, out, _ = run(capsys, "phi", "--ring", "Zn:9", "--element", "0")
    assert "= 1458" in out
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "phi", "--ring", "Zn:3", "--element", "1+i", "--format", "json",
                       "--out", str(target))
    assert code == 0 and out == ""
    jsonschema.validate(json.loads(target.read_text()), PHI_SCHEMA)


@pytest.mark.parametrize("argv,code", [
    (["phi", "--ring", "Zn:6q", "--element", "0"], 2),
    (["phi", "--ring", "GF:4^1", "--element", "0"], 2),
    (["phi", "--ring", "Zn:3", "--element", "1 +"], 2),
    (["phi", "--ring", "Zn:3", "--k", "3", "--element", "1", "--method", "formula"], 4),
    (["phi", "--ring", "Zn:15", "--element", "[[0,1],[0,0]]"], 4),
    (["table", "--ring", "Zn:15"], 4),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err


def test_size_limit_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("EXUNITS_SIZE_LIMIT", "1000")
    code, _, err = run(capsys, "phi", "--ring", "Zn:7", "--element", "1", "--method", "oracle")
    assert code == 3 and "limit" in err


def test_table_examples(capsys):
    code, out, _ = run(capsys, "table", "--ring", "GF:3^1", "--k", "2", "--by", "class",
                       "--format", "json", "--verify")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 12
    by_class = {r["class"]: r["result"]["exact"] for r in rows}
    assert by_class["Zero"] == 18 and by_class["Identity"] == 27
    assert by_class["IdempotentRankOne"] == 10 and by_class["NilpotentNonzero"] == 6
    assert all(r["match"] and r["oracle"] == r["result"]["exact"] for r in rows)
    assert any(r["class"] == "InvertibleOther" for r in rows)

    code, out, _ = run(capsys, "table", "--ring", "GF:5^1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == TABLE_COLUMNS
    by_class = {r["class"]: r["lo"] for r in rows if r["exact"] == "True"}
    assert by_class["Zero"] == "280" and by_class["NilpotentNonzero"] == "210"
    assert by_class["IdempotentRankOne"] == "234" and by_class["Identity"] == "365"

    code, out, _ = run(capsys, "table", "--ring", "Zn:2", "--k", "3", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["result"] for r in rows] == [{"exact": 0}, {"exact": 0}]


def test_table_by_element(capsys):
    code, out, _ = run(capsys, "table", "--ring", "Zn:3", "--by", "element", "--verify", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 81 and all(r["match"] for r in rows)
    # every ordered pair of exceptional units sums to exactly one c
    from exunits.ambient import quat_ambient
    from exunits.ring import make_zn

    n_exc = int(quat_ambient(make_zn(3)).exceptional_mask.sum())
    assert sum(r["result"]["exact"] for r in rows) == n_exc**2


# formula and oracle agree on the exact cases of the verification corpus
CORPUS = [
    ("Zn:2", ["0", "1", "1+i"], (2, 3, 4)),
    ("Zn:4", ["0", "1", "1+i+j", "2+3k"], (2, 3)),
    ("GF:2^2", ["0", "1", "[0,1]", "[1,1] + i"], (2, 3)),
    ("GR:2^2:2", ["0", "[0,1]", "1 + [1,1]j"], (2,)),
    ("Zn:3", ["0", "1", "[[1,0],[0,0]]", "[[0,1],[0,0]]"], (2,)),
    ("Zn:5", ["0", "1", "[[1,0],[0,0]]", "[[0,1],[0,0]]"], (2,)),
    ("Zn:9", ["0", "1", "3+i", "4 + 3j"], (2,)),
    ("GF:3^2", ["0", "1", "[[1,0],[0,0]]", "[[0,1],[0,0]]"], (2,)),
    ("Zn:15", ["0", "1", "7 + 2k"], (2,)),
    ("Zn:6", ["0", "1", "3 + i"], (2, 3)),
]


@pytest.mark.parametrize("ring,elements,ks", CORPUS)
def test_formula_and_oracle_agree(capsys, ring, elements, ks):
    for e in elements:
        for k in ks:
            f = phi_json(capsys, "--ring", ring, "--k", str(k), "--element", e, "--method", "formula")
            o = phi_json(capsys, "--ring", ring, "--k", str(k), "--element", e, "--method", "oracle")
            if "exact" in f["result"]:
                assert f["result"] == o["result"], (ring, e, k)
            else:
                lo, hi = f["result"]["bounds"]
                assert lo <= o["result"]["exact"] <= hi


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "matrix", "--max-q", "7", "--jobs", "1")
    assert code == 0 and out.strip().endswith("checks passed")
    code, out, _ = run(capsys, "verify", "--suite", "even", "--max-order", "256", "--jobs", "1",
                       "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["failed"] == 0 and report["passed"] >= 5
    code, out, _ = run(capsys, "verify", "--suite", "bounds", "--max-q", "9", "--jobs", "2",
                       "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and list(rows[0]) == VERIFY_COLUMNS and all(r["passed"] == "True" for r in rows)


def test_verify_reports_mismatch(capsys, monkeypatch):
    import exunits.verify as verify

    monkeypatch.setattr(verify, "check_binomial", lambda: (False, "1", "2", "forced"))
    code, out, err = run(capsys, "verify", "--suite", "fields", "--max-q", "2", "--jobs", "1")
    assert code == 1 and "FAIL" in out and "formula=1 oracle=2" in err


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "exunits.cli", "phi", "--ring", "Zn:3",
                           "--element", "0", "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == {"exact": 18}
