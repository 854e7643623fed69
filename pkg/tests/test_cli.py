import json
import subprocess
import sys

import pytest

from modgl2 import BaseField, ShiftCertificate, VirtualRep, sym_class
from modgl2.cli import parse_operand, run


def run_json(capsys, *argv):
    code = run(list(argv) + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_decompose_sym(capsys):
    code, doc = run_json(capsys, "decompose", "--p", "3", "--f", "1", "--sym", "3")
    assert code == 0
    assert doc["terms"] == [{"a": 0, "n": [1], "mult": 1}, {"a": 1, "n": [1], "mult": 1}]
    assert VirtualRep.from_json(doc) == sym_class(BaseField(3), 0, 3)


def test_decompose_table(capsys):
    assert run(["decompose", "--p", "3", "--sym", "3"]) == 0
    assert "dimension 4" in capsys.readouterr().out


def test_operand_grammar():
    F = BaseField(3, 2)
    x = parse_operand(F, "2*det^1.Sym^3[1] + S(1,0) - det^-2")
    expected = 2 * sym_class(F, 1, 3).twist(1) + VirtualRep.basis(F, 0, [1, 0]) - VirtualRep.det(F, -2)
    assert x == expected
    assert parse_operand(F, json.dumps(x.to_json())) == x
    assert parse_operand(F, "Sym^-3") == sym_class(F, 0, -3)


def test_tensor(capsys):
    code, doc = run_json(capsys, "tensor", "--p", "3", "--x", "Sym^1", "--y", "Sym^1")
    assert code == 0 and doc["dimension"] == 4


def test_check_leq(capsys):
    code, doc = run_json(capsys, "check-leq", "--p", "3", "--x", "Sym^3", "--y", "Sym^3")
    assert code == 0 and doc["leq"] is True
    code, doc = run_json(capsys, "check-leq", "--p", "3", "--x", "1", "--y", "Sym^2")
    assert doc["leq"] is False


def test_lift_weight(capsys):
    code, doc = run_json(capsys, "lift-weight", "--p", "2", "--places", "1:1", "--k", "2")
    assert code == 0 and doc["delta"] == 1
    first = doc["certificates"][str(doc["n_certified"])][0][0]
    assert ShiftCertificate.from_json(first).t == doc["n_certified"]


def test_lift_weight_request_file(tmp_path, capsys):
    req = tmp_path / "req.json"
    req.write_text(json.dumps({"p": 3, "k": 3, "places": [{"e": 1, "f": 1}], "weights": [[{"a": 0, "n": [1]}]]}))
    code, doc = run_json(capsys, "lift-weight", "--in", str(req), "--no-certificates")
    assert code == 0 and doc["delta"] == 2 and "certificates" not in doc


def test_dominate_and_replay(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert run(["dominate", "--p", "3", "--f", "2", "--n", "1,1", "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["replay", str(out)]) == 0
    assert "OK" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    doc["t"] -= 2
    out.write_text(json.dumps(doc))
    assert run(["replay", str(out)]) == 1


def test_brute_force(capsys):
    code, doc = run_json(capsys, "brute-force-t", "--p", "3", "--n", "1", "--t-max", "20")
    assert code == 0 and doc["s"] == 1 and 1 in doc["admissible"]


def test_brauer_table(capsys, tmp_path):
    code, doc = run_json(capsys, "brauer-table", "--p", "2", "--f", "2")
    assert code == 0 and len(doc["classes"]) == 12
    assert run(["brauer-table", "--p", "3", "--csv", "--out", str(tmp_path / "t.csv")]) == 0
    assert len((tmp_path / "t.csv").read_text().splitlines()) == 7


def test_verify_lemmas(capsys):
    assert run(["verify-lemmas", "--p", "3", "--max-n", "10"]) == 0
    capsys.readouterr()
    assert run(["verify-lemmas", "--p", "3", "--max-n", "10", "--inject-fault", "--seed", "4"]) == 1


def test_domain_error_object(capsys):
    code = run(["dominate", "--p", "3", "--f", "2", "--n", "1,0"])
    assert code == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "NoNormPowerForm"


@pytest.mark.parametrize("argv", [
    ["decompose", "--p", "4", "--sym", "2"],
    ["decompose", "--f", "1", "--sym", "2"],
    ["brauer-table", "--p", "5", "--f", "3"],
    ["frobnicate"],
    ["decompose", "--p", "3", "--x", "Sym^^2"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        run(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "modgl2", "decompose", "--p", "3", "--sym", "3", "--json"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["terms"][0]["n"] == [1]
