import json
import subprocess
import sys
from pathlib import Path

import pytest

from paracontact.cli import main, run
from paracontact.cli.fileformat import ManifoldFileError, dumps, load, loads, same_model
from paracontact.geometry import Curvature

DATA = Path(__file__).parent / "data"


def cli_json(*argv):
    doc, _ = run([*argv, "--format", "json"])
    return doc.to_dict()


def test_curvature_builtins():
    assert cli_json("curvature", "builtin:example_5_1?u=1")["derived"]["r"] == "-6"
    assert cli_json("curvature", "builtin:flat_para_cosymplectic")["derived"]["r"] == "0"
    assert cli_json("curvature", "builtin:example_5_2")["derived"]["r"] == "-18*z^4"
    assert cli_json("curvature", "builtin:example_5_1")["derived"]["r"] == "-4*u - 2"


def test_json_document_shape():
    doc = cli_json("soliton", "verify", "builtin:example_5_1?u=0", "--Z=xi", "--delta=-2",
                   "--lambda=-2")
    assert set(doc) == {"command", "engine_version", "input", "status", "derived", "checks",
                        "warnings"}
    assert doc["status"] == "pass"
    assert doc["derived"]["classification"] == "shrinking"
    check = doc["checks"][0]
    assert set(check) == {"identity", "status", "residuals", "derived", "failures", "note"}


def test_output_deterministic():
    argv = ["identity", "all", "builtin:example_5_1", "--Z=xi", "--lambda=-4*u - 2", "--delta=3",
            "--format", "json"]
    outs = {subprocess.run([sys.executable, "-m", "paracontact", *argv], capture_output=True,
                           text=True).stdout for _ in range(3)}
    assert len(outs) == 1
    json.loads(outs.pop())


@pytest.mark.parametrize("argv, status", [
    (["curvature", "builtin:example_5_2"], 0),
    (["structure", "builtin:example_5_1"], 0),
    (["structure", "builtin:example_5_2"], 1),
    (["soliton", "verify", "builtin:example_5_1?u=0", "--Z=xi", "--lambda=-2", "--delta=-2"], 0),
    (["soliton", "verify", "builtin:example_5_1?u=0", "--Z=xi", "--lambda=5", "--delta=1"], 1),
    (["soliton", "solve-lambda", "builtin:example_5_1?u=0", "--Z=e1"], 1),
    (["soliton", "verify", "builtin:nowhere", "--Z=xi", "--lambda=1"], 2),
    (["soliton", "verify", "builtin:example_5_1", "--Z=xi"], 2),
    (["soliton", "verify", "builtin:example_5_1", "--Z=zeta", "--lambda=1"], 2),
    (["identity", "T42", "builtin:example_5_1", "--Z=xi", "--lambda=1"], 2),
    (["reproduce-paper"], 0),
])
def test_exit_status(argv, status, capsys):
    assert main(argv) == status


def test_solve_lambda_with_delta_lambda():
    doc = cli_json("soliton", "solve-lambda", "builtin:example_5_1", "--Z=xi", "--delta=lambda")
    assert doc["derived"]["lambda"] == "-4*u - 2"
    assert doc["status"] == "pass"


def test_solve_lambda_reports_pivot_failure():
    doc = cli_json("soliton", "solve-lambda", "builtin:example_5_1?u=0", "--Z=e1")
    check = doc["checks"][0]
    assert check["status"] == "fail"
    assert check["derived"]["pair"] == [1, 2]
    assert check["failures"][0]["witness"] == "1"


def test_file_input_with_fields():
    doc = cli_json("soliton", "verify", str(DATA / "flat_euler.toml"))
    assert doc["status"] == "pass"
    doc = cli_json("identity", "GL1", str(DATA / "flat_euler.toml"), "--u=potential")
    assert doc["checks"][0]["status"] == "pass"


def test_structure_file():
    doc = cli_json("structure", str(DATA / "twisted.toml"))
    flags = doc["derived"]["flags"]
    assert flags["paracontact_metric"] and not flags["K_paracontact"]
    assert doc["derived"]["kmu"]["mu"] == "0"
    assert doc["status"] == "pass"


def test_vacuous_checks_warn():
    doc = cli_json("identity", "all", "builtin:flat_para_cosymplectic", "--Z=xi", "--lambda=0")
    assert doc["status"] == "pass"
    vacuous = {c["identity"] for c in doc["checks"] if c["status"] == "hypothesis_not_satisfied"}
    assert vacuous and vacuous <= {w["id"] for w in doc["warnings"]}


@pytest.mark.parametrize("name", ["builtin:example_5_1", "builtin:example_5_2",
                                  "builtin:flat_para_cosymplectic", str(DATA / "twisted.toml"),
                                  str(DATA / "flat_euler.toml")])
def test_dumps_loads_round_trip(name):
    first = load(name)
    text = dumps(first)
    second = loads(text)
    assert same_model(first, second)
    assert dumps(second) == text
    assert Curvature.of(second.model).scalar == Curvature.of(first.model).scalar


BAD = {
    "nonsymmetric": ('[manifold]\nmode = "chart"\nbasis = ["x", "y"]\n'
                     '[metric]\nrows = [[1, "x"], [0, 1]]\n', "metric"),
    "undeclared": ('[manifold]\nmode = "chart"\nbasis = ["x", "y"]\n'
                   '[metric]\nrows = [[1, "w"], ["w", 1]]\n', "metric"),
    "syntax": ('[manifold]\nmode = "chart"\nbasis = ["x", "y"]\n'
               '[metric]\nrows = [[1, "x +"], ["x +", 1]]\n', "metric"),
    "toml": ('[manifold\nmode = "chart"\n', None),
    "bracket_in_chart": ('[manifold]\nmode = "chart"\nbasis = ["x", "y"]\n'
                         '[metric]\nrows = [[1, 0], [0, 1]]\n'
                         '[brackets]\nentries = [[1, 2, 1, "1"]]\n', "brackets"),
    "bad_axioms": ('[manifold]\nmode = "chart"\nbasis = ["x", "y", "z"]\n'
                   '[metric]\nrows = [[1, 0, 0], [0, -1, 0], [0, 0, 1]]\n'
                   '[structure]\nphi = [[1, 0, 0], [0, 1, 0], [0, 0, 0]]\n'
                   'xi = [0, 0, 1]\neta = [0, 0, 1]\n', "structure"),
}


@pytest.mark.parametrize("case", sorted(BAD))
def test_file_errors_name_section(case):
    text, section = BAD[case]
    with pytest.raises(ManifoldFileError) as info:
        loads(text, source=case)
    assert info.value.source == case
    if section:
        assert info.value.section.startswith(section)
    else:
        assert info.value.line is not None


def test_file_error_exit_status(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text(BAD["nonsymmetric"][0])
    assert main(["curvature", str(bad)]) == 2
    assert "metric" in capsys.readouterr().err


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "paracontact", "curvature",
                          "builtin:flat_para_cosymplectic"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "status: pass" in out.stdout


def test_reproduce_warnings_carry_witnesses():
    doc = cli_json("reproduce-paper")
    assert doc["status"] == "pass"
    ids = {w["id"] for w in doc["warnings"]}
    assert {"example_5_1.quoted_connection", "example_5_2.axioms"} <= ids
    assert all(w["witness"] not in ("", "0") for w in doc["warnings"]
               if w["id"] in ("example_5_1.quoted_connection", "example_5_2.axioms"))
