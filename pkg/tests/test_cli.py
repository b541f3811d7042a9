import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from trivext import cli
from trivext.classify import GoldenDiff, GoldenReport
from trivext.report import REPORT_KEYS, SCHEMA_VERSION, dumps, exact

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_check_ig_case4(capsys):
    code, doc, _ = run(capsys, "check-ig", "--spec", DATA / "a2_case4.alg")
    assert code == cli.EXIT_OK
    assert doc["schema"] == SCHEMA_VERSION
    assert set(REPORT_KEYS) <= set(doc)
    assert doc["verdict"] == "ig_infinite_gldim"
    assert doc["alpha"]["r"] == doc["alpha"]["ell"] == 1
    assert doc["T"]["generators"] == ["S2"] and doc["ker_varpi"]["generators"] == ["P2"]


def test_asid_on_tensor_file(capsys):
    code, doc, _ = run(capsys, "asid", "--spec", DATA / "a2_tensor.alg")
    assert code == cli.EXIT_OK
    assert set(doc["alpha"]["sources"].values()) == {1}


def test_cm_list_counts(capsys):
    for name, count in [("a2_case4.alg", 2), ("a2_tensor.alg", 2), ("a2_regular.alg", 3)]:
        code, doc, _ = run(capsys, "cm-list", "--spec", DATA / name)
        assert code == cli.EXIT_OK
        assert (doc["cm"]["count"], doc["cm"]["graded_count"]) == (count, count)


def test_k0(capsys):
    code, doc, _ = run(capsys, "k0", "--spec", DATA / "a2_case4.alg")
    assert code == cli.EXIT_OK
    assert doc["k0"]["rank"] == 1 and doc["k0"]["holds"] and doc["k0"]["orbits_agree"]


def test_stable_hom_case4(capsys):
    code, doc, _ = run(capsys, "stable-hom", "--spec", DATA / "a2_case4.alg")
    assert code == cli.EXIT_OK


def test_quasi_veronese(capsys):
    code, doc, _ = run(capsys, "quasi-veronese", "--spec", DATA / "graded_example.alg", "--ell", 2)
    assert code == cli.EXIT_OK
    assert (doc["quasi_veronese"]["dim"], doc["nabla"]["dim"], doc["delta"]["dim"]) == (8, 7, 1)


def test_reports_are_byte_identical(capsys, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert cli.main(["asid", "--spec", str(DATA / "a2_case4.alg"), "--out", str(path)]) == cli.EXIT_OK
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["timings"] == {}


def test_timings_on_request(capsys):
    code, doc, _ = run(capsys, "check-ig", "--spec", DATA / "a2_case4.alg", "--timings")
    assert code == cli.EXIT_OK and doc["timings"]


def test_input_errors(capsys, tmp_path):
    code, doc, err = run(capsys, "check-ig", "--spec", tmp_path / "missing.alg")
    assert code == cli.EXIT_INPUT and doc is None and "cannot read" in err
    bad = tmp_path / "bad.alg"
    bad.write_text('algebra "x" { vertices 1; }')
    code, _, err = run(capsys, "check-ig", "--spec", bad)
    assert code == cli.EXIT_INPUT and "line 1, column" in err
    code, _, err = run(capsys, "check-ig", "--spec", DATA / "a2_case4.alg", "--field", "F4")
    assert code == cli.EXIT_INPUT


def test_quasi_veronese_needs_degrees(capsys):
    code, _, err = run(capsys, "quasi-veronese", "--spec", DATA / "a2_case4.alg", "--ell", 2)
    assert code == cli.EXIT_INPUT and "degrees" in err


def test_cap_exhaustion_exit_code(capsys):
    code, doc, _ = run(capsys, "check-ig", "--spec", DATA / "a2_case4.alg", "--cap-a", 0)
    assert code == cli.EXIT_UNDETERMINED and doc["verdict"] == "undetermined"


def test_golden_diff_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify_a2", lambda caps, field: GoldenReport("a2", 1, [GoldenDiff("x", "y")]))
    code, doc, _ = run(capsys, "verify-table", "--table", "a2")
    assert code == cli.EXIT_DIFF and doc["diffs"] == ["x: y"]


def test_verify_negative(capsys):
    code, doc, _ = run(capsys, "verify-table", "--table", "negative", "--cap", 1)
    assert code == cli.EXIT_OK


def test_classify_a2(capsys):
    code, doc, _ = run(capsys, "classify", "--quiver", "a2", "--cap", 1, "--field", "F2")
    assert code == cli.EXIT_OK
    assert doc["golden"]["diffs"] == []
    assert doc["candidates"] == 38 and len(doc["asid"]) == 8
    assert len(doc["thick_subcategories"]) == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trivext", "check-ig", "--spec", str(DATA / "a2_case4.alg")],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "ig_infinite_gldim"


def test_exact_serialization():
    assert exact({"a": Fraction(1, 2), "b": Fraction(4, 2), "c": [1, (2, 3)]}) == {"a": "1/2", "b": 2, "c": [1, [2, 3]]}
    with pytest.raises(TypeError):
        exact(0.5)
    assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'
