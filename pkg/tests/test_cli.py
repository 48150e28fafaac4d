import json
import subprocess
import sys

import jsonschema
import pytest

from parahopf.cli import ModelSpec, load_schema, main
from parahopf.rootsys import SpecParseError


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def check(name, out):
    doc = json.loads(out)
    jsonschema.Draft202012Validator(load_schema(name)).validate(doc)
    return doc


@pytest.mark.parametrize("name", ["roots", "chevalley", "parabolic", "contract", "resonances",
                                  "report", "verify", "error"])
def test_schemas_are_valid(name):
    jsonschema.Draft202012Validator.check_schema(load_schema(name))


def test_roots(capsys):
    code, out, _ = run(["roots", "A2"], capsys)
    doc = check("roots", out)
    assert code == 0
    assert doc["num_roots"] == 6 and len(doc["roots"]) == 6
    assert doc["gram"] == [["2", "-1"], ["-1", "2"]]


@pytest.mark.parametrize("spec", ["A1", "B2", "G2", "A1xA1"])
def test_chevalley(spec, capsys):
    code, out, _ = run(["chevalley", spec], capsys)
    doc = check("chevalley", out)
    assert code == 0 and doc["axioms"]["ok"]


@pytest.mark.parametrize("model", ["A2|crossed=1", "A2|crossed=1,2", "B3|crossed=2", "A1xA1|crossed=1", "G2"])
def test_parabolic(model, capsys):
    code, out, _ = run(["parabolic", model], capsys)
    doc = check("parabolic", out)
    assert code == 0
    assert doc["delta_compactness"]["ok"]
    assert doc["consistency"]["homomorphism"]


def test_contract(capsys):
    code, out, _ = run(["contract", "A2|crossed=1,2"], capsys)
    doc = check("contract", out)
    assert code == 0 and doc["strictly_contracting"]
    assert [e["log_modulus"] for e in doc["spectrum"]] == ["-1", "-1", "-2"]
    code, out, _ = run(["contract", "A2|crossed=1,2", "--sigma", "1,-1", "--sigma-imag", "1/2,0"], capsys)
    doc = check("contract", out)
    assert not doc["strictly_contracting"]


def test_resonances_example(capsys):
    code, out, _ = run(["resonances", "--eigenvalues", "[[0.5,0],[0.25,0]]"], capsys)
    doc = check("resonances", out)
    assert code == 0
    assert doc["affine_moduli"]["count"] == 1
    assert doc["poincare_dulac"] == [[2, [2, 0]]]
    assert not doc["linearizable"]


def test_resonances_polar_and_log(capsys):
    code, out, _ = run(["resonances", "--eigenvalues", "0.5∠90,0.25∠180"], capsys)
    assert code == 0 and check("resonances", out)["poincare_dulac"] == [[2, [2, 0]]]
    code, out, _ = run(["resonances", "--log=-1,-2"], capsys)
    doc = check("resonances", out)
    assert doc["exact"] and doc["poincare_dulac"] == [[2, [2, 0]]]


def test_report(capsys):
    code, out, _ = run(["report", "A3|crossed=2"], capsys)
    doc = check("report", out)
    assert code == 0 and not doc["generic_admissible"]
    code, out, _ = run(["report", "A2|crossed=1"], capsys)
    assert check("report", out)["generic_admissible"]


def test_verify(capsys):
    code, out, _ = run(["verify", "A2|crossed=1,2", "--samples", "5"], capsys)
    doc = check("verify", out)
    assert code == 0 and doc["all_passed"]


@pytest.mark.parametrize("argv", [
    ["resonances", "--eigenvalues", "[[1.5,0]]"],
    ["resonances", "--log", "0"],
    ["report", "A1xA1|crossed=1"],
    ["contract", "A2|crossed=1,2", "--sigma", "1,1,1"],
    ["report", "A2"],
])
def test_semantic_errors_exit_one(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 1
    check("error", out)


@pytest.mark.parametrize("argv,token", [
    (["roots", "Q2"], "q"),
    (["roots", "A2xB"], "b"),
    (["parabolic", "A2|crossed=3"], "3"),
    (["parabolic", "A2|crosed=1"], "crosed="),
    (["parabolic", "A2|crossed=1,x"], "x"),
    (["resonances", "--eigenvalues", "[[0.5,0],[0.25]]"], "[0.25]"),
    (["resonances", "--log=-1,abc"], "abc"),
    (["resonances"], ""),
])
def test_parse_errors_exit_two(argv, token, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == ""
    assert "parse error" in err
    assert token.lower() in err.lower()


def test_argparse_errors_exit_two(capsys):
    assert run(["nosuchcommand"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_model_spec_positions():
    with pytest.raises(SpecParseError) as info:
        ModelSpec.parse("A3|crossed=1,9")
    assert info.value.position == 13 and info.value.token == "9"
    assert ModelSpec.parse("B3|crossed=3,1").crossed == frozenset({1, 3})
    assert ModelSpec.parse("B3").crossed is None


def test_determinism(capsys):
    outs = {run(["parabolic", "B3|crossed=1,3"], capsys)[1] for _ in range(3)}
    assert len(outs) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parahopf", "roots", "A1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["num_roots"] == 2
