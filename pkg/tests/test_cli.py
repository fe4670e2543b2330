import json
import subprocess
import sys

import jsonschema
import pytest

from liecones.cli import REPORT_SCHEMA, main, rep_from_json, rep_to_json_full
from liecones.cliffrep import clifford_module, verify_rep


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def check_schema(doc):
    jsonschema.validate(doc, REPORT_SCHEMA)


def test_validate_catalog(capsys):
    code, out = run_cli(["validate", "--catalog", "h(1)"], capsys)
    assert code == 0
    doc = json.loads(out)
    check_schema(doc)
    assert doc["status"] == "OK"
    assert doc["results"]["jacobi_ok"] is True


def test_validate_algebra_file(tmp_path, capsys):
    from liecones.catalog import build
    path = tmp_path / "h1.json"
    path.write_text(json.dumps(build("h(1)").algebra.to_json()))
    code, out = run_cli(["validate", "--algebra", str(path)], capsys)
    assert code == 0
    assert json.loads(out)["results"]["antisymmetry_ok"] is True


def test_input_errors_exit_1(capsys, tmp_path):
    code, out = run_cli(["validate", "--catalog", "e8"], capsys)
    assert code == 1
    doc = json.loads(out)
    check_schema(doc)
    assert doc["status"] == "ERROR"

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run_cli(["validate", "--algebra", str(bad)], capsys)
    assert code == 1

    code, out = run_cli(["polarize", "--catalog", "h(1)", "--lambda", "1,2"], capsys)
    assert code == 1          # wrong functional length


def test_analyze(capsys):
    code, out = run_cli(["analyze", "--catalog", "sl(2,R)"], capsys)
    doc = json.loads(out)
    assert doc["results"]["nilpotent"] is False
    assert doc["results"]["centroid_dim"]["even"] == 1


def test_cartan_and_roots(capsys):
    code, out = run_cli(["cartan", "--catalog", "gl(1|1)"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["results"]["h0"]["dim"] == 2

    code, out = run_cli(["roots", "--catalog", "su(2)"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "OK"
    alphas = sorted(r["alpha"][0] for r in doc["results"]["roots"])
    assert alphas == ["-2", "0", "2"]
    assert doc["results"]["symmetric"] is True

    # sl(2,R) is Hermitian: the scan finds the compact so(2) Cartan
    code, out = run_cli(["roots", "--catalog", "sl(2,R)"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "OK"
    assert sorted(r["alpha"][0] for r in doc["results"]["roots"]) == ["-2", "0", "2"]

    # gl(1|1): the unique Cartan acts with real eigenvalues on the odd part
    code, out = run_cli(["roots", "--catalog", "gl(1|1)", "--cap", "100"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "UNDETERMINED"


def test_cone_check_and_star_reduced(capsys):
    code, out = run_cli(["cone-check", "--catalog", "cl(1|2,++)"], capsys)
    doc = json.loads(out)
    assert doc["results"]["pd_search"]["status"] == "POINTED_CERTIFIED"

    code, out = run_cli(["star-reduced", "--catalog", "cl(1|2,+-)"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "OBSTRUCTED"
    assert doc["results"]["reasons"][0]["kind"] == "isotropic_odd"

    code, out = run_cli(["star-reduced", "--catalog", "su(1,1|1,1)",
                         "--cap", "400"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "OBSTRUCTED"
    assert doc["results"]["reasons"][0]["kind"] == "root_square_hull"


def test_polarize_and_orbit_classify(capsys):
    code, out = run_cli(["polarize", "--catalog", "hc(2|2,++)",
                         "--lambda", "0,0,1"], capsys)
    doc = json.loads(out)
    assert doc["results"]["m0_dim"] == 2 and doc["results"]["clifford_dim"] == 2

    code, out = run_cli(["polarize", "--catalog", "cl(1|2,++)",
                         "--lambda", "-1"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "UNDETERMINED"

    code, out = run_cli(["orbit-classify", "--catalog", "hc(2|2,++)",
                         "--box", "central"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "OK"
    assert doc["results"]["orbit_count"] == 3    # central characters 0, 1, 2


def test_orbit_box_file(tmp_path, capsys):
    box = tmp_path / "box.json"
    box.write_text(json.dumps({"functionals": [["0", "0", "1"], ["1", "1", "1"]]}))
    code, out = run_cli(["orbit-classify", "--catalog", "h(1)",
                         "--box", str(box)], capsys)
    doc = json.loads(out)
    assert doc["results"]["orbit_count"] == 1    # same orbit: lam(Z) = 1


def test_clifford_command(capsys):
    code, out = run_cli(["clifford", "--d", "3", "--normalization", "2,2,2"], capsys)
    doc = json.loads(out)
    assert doc["results"]["dimension"] == 4 and doc["results"]["verification"] is True

    code, out = run_cli(["clifford", "--catalog", "cl(1|2,++)", "--gamma", "1"], capsys)
    doc = json.loads(out)
    assert doc["results"]["classification"] == "OK"
    assert doc["results"]["module_count"] == 2

    code, out = run_cli(["clifford", "--catalog", "cl(1|2,+-)", "--gamma", "1"], capsys)
    doc = json.loads(out)
    assert doc["results"]["classification"] == "NONE"


def test_verify_rep_roundtrip(tmp_path, capsys):
    rep = clifford_module(2, [2, 2])
    doc = rep_to_json_full(rep)
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(doc))
    rep2 = rep_from_json(json.loads(path.read_text()))
    assert rep2.mats == rep.mats
    code, out = run_cli(["verify-rep", "--rep", str(path)], capsys)
    rdoc = json.loads(out)
    assert code == 0 and rdoc["results"]["all_ok"] is True


def test_hwm_command(capsys):
    code, out = run_cli(["hwm", "--catalog", "osp(1|2)", "--x0", "1",
                         "--depth", "4", "--weight", "0"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "OK"
    weights = {w["weight"][0]: w["multiplicity"] for w in doc["results"]["weights"]}
    assert weights == {str(-m): 1 for m in range(9)}


def test_catalog_commands(capsys):
    code, out = run_cli(["catalog", "list"], capsys)
    doc = json.loads(out)
    assert "h(1)" in doc["results"]["keys"]
    code, out = run_cli(["catalog", "get", "gl(1|1)"], capsys)
    doc = json.loads(out)
    assert doc["results"]["algebra"]["even"] == 2
    code, out = run_cli(["catalog", "table1", "psq(p,q)"], capsys)
    doc = json.loads(out)
    assert doc["results"]["even_quotient"] == "su(p,q)"


def test_schema_flag(capsys):
    code, out = run_cli(["--schema"], capsys)
    assert code == 0
    schema = json.loads(out)
    assert schema["title"] == "liecones report"


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run_cli(["validate", "--catalog", "h(1)", "--out", str(target)], capsys)
    assert code == 0
    assert json.loads(target.read_text()) == json.loads(out)


def test_determinism_subprocess():
    cmds = [
        ["validate", "--catalog", "gl(1|1)"],
        ["star-reduced", "--catalog", "cl(1|2,+-)"],
        ["polarize", "--catalog", "h(1)", "--lambda", "0,0,1"],
        ["hwm", "--catalog", "osp(1|2)", "--x0", "1", "--depth", "3"],
    ]
    for cmd in cmds:
        outs = []
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "liecones.cli"] + cmd,
                                  capture_output=True, text=True, check=True)
            outs.append(proc.stdout)
        assert outs[0] == outs[1], cmd


def test_all_reports_validate_against_schema(capsys):
    cmds = [
        ["analyze", "--catalog", "cl(1|1,+)"],
        ["cartan", "--catalog", "h(1)"],
        ["cone-check", "--catalog", "cl(1|1,-)"],
        ["catalog", "list"],
    ]
    for cmd in cmds:
        code, out = run_cli(cmd, capsys)
        check_schema(json.loads(out))


def test_validate_reports_violations_exit_zero(tmp_path, capsys):
    # computed-but-failing verdicts still exit 0 (spec: exit 0 = computed)
    doc = {
        "name": "bad", "field": "Q", "even": 3, "odd": 0,
        "basis": ["X", "Y", "Z"],
        "brackets": [
            {"left": 0, "right": 1, "out": [{"k": 2, "c": "1"}]},
            {"left": 1, "right": 0, "out": [{"k": 2, "c": "1"}]},
        ],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out = run_cli(["validate", "--algebra", str(path)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "OK"
    assert rep["results"]["antisymmetry_ok"] is False
    assert ["antisymmetry", 0, 1] in rep["results"]["violations"]
