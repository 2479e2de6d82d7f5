import json

import pytest

from mcpoisson.cli import main, run_flow
from conftest import card


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "heisenberg3" in out and "kodaira_thurston" in out
    code, out, _ = run(capsys, "catalog", "--json")
    assert code == 0 and len(json.loads(out)) >= 12


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "heisenberg3")
    assert code == 0 and out.startswith("OK heisenberg3")
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "b", "kind": "lie", "dimension": 3, '
                   '"brackets": [[1, 2, 3, "1"], [2, 1, 3, "1"]]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "(1,2,3)" in err
    code, _, err = run(capsys, "validate", "missing_card")
    assert code == 2


def test_canonical_output_round_trips(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "sl2", "--canonical")
    assert code == 0
    p = tmp_path / "sl2.json"
    p.write_text(out)
    code, again, _ = run(capsys, "validate", str(p), "--canonical")
    assert again == out


def test_report_json_is_deterministic(capsys):
    code, first, _ = run(capsys, "report", "heisenberg3", "--json")
    assert code == 0
    code, second, _ = run(capsys, "report", "heisenberg3", "--json")
    assert first == second
    data = json.loads(first)
    assert data["passed"] is True and data["card"] == "heisenberg3"


def test_report_table_and_suites(capsys):
    code, out, _ = run(capsys, "report", "sl2", "--suite", "extensions")
    assert code == 0 and out.rstrip().endswith("RESULT: PASS")
    code, _, err = run(capsys, "report", "sl2", "--suite", "symplectic")
    assert code == 2 and "does not apply" in err
    code, _, _ = run(capsys, "report", "sl2", "--suite", "nonsense")
    assert code == 2


def test_report_exit_one_on_failed_check(capsys):
    # the printed chain operator is not the adjoint of [X, .]
    code, out, _ = run(capsys, "report", "kxy22", "--suite", "frobenius")
    assert code == 1 and "printed_adjointness" in out and "RESULT: FAIL" in out


def test_flow(capsys):
    code, out, _ = run(capsys, "flow", "filiform6", "--hamiltonian", "x1 + x2^2", "--steps", "2", "--h", "1/10")
    assert code == 0 and "RESULT: PASS" in out
    code, out, _ = run(capsys, "flow", "heisenberg3", "--hamiltonian", "x1*x2 - 3/2*x3^3", "--json")
    assert code == 0 and json.loads(out)["passed"] is True


@pytest.mark.parametrize("argv", [
    ("flow", "heisenberg3", "--hamiltonian", "x1", "--h", "0.1"),
    ("flow", "heisenberg3", "--hamiltonian", "x9"),
    ("flow", "kx2", "--hamiltonian", "1"),
    ("flow", "heisenberg3", "--hamiltonian", "x1", "--steps", "-1"),
    ("frobnicate",),
    (),
])
def test_bad_input_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and "mcpoisson" in out


def test_run_flow_conserves():
    out = run_flow(card("filiform6"), "x1 + x2^2", 1, 1, "forms")
    assert out["passed"] and out["steps"][0]["conservation"] == 0
