import json
import subprocess
import sys

import pytest

from trifermion.cli import EXIT_BAD_INPUT, main, paper_example_rows
from trifermion.exterior import save_state
from trifermion.invariants import t123_eps
from trifermion.qubits import GHZ, W, qubits_to_json
from trifermion.states import OMEGA, PHI, PSI
from trifermion.verify import SUITES, run_suite, sample_dual_covariance, sample_sl6_invariance


@pytest.fixture
def state_file(tmp_path):
    def write(state, name="p.json"):
        path = tmp_path / name
        save_state(state, path)
        return str(path)

    return write


@pytest.mark.parametrize("state,code", [(PSI, 4), (PHI, 3), (OMEGA, 1)], ids=["psi", "phi", "omega"])
def test_classify_exit_code_is_rank(state_file, capsys, state, code):
    assert main(["classify", state_file(state)]) == code
    report = json.loads(capsys.readouterr().out)
    assert report["rank"] == code


def test_classify_accepts_qubit_json(tmp_path, capsys):
    for psi, code in ((GHZ, 4), (W, 3)):
        path = tmp_path / "q.json"
        path.write_text(json.dumps(qubits_to_json(psi)))
        assert main(["classify", str(path)]) == code
    capsys.readouterr()


def test_invariants_human_and_json(state_file, capsys):
    path = state_file(PSI)
    assert main(["invariants", path]) == 0
    out = capsys.readouterr().out
    assert "T123" in out and "Rank4_GHZ_like" in out
    assert main(["invariants", path, "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["t123"]["re"] == pytest.approx(8 / 9)
    assert rep["tangle"] == pytest.approx(8 / 9)


def test_invariants_lists_dual_of_phi(state_file, capsys):
    main(["invariants", state_file(PHI), "--format", "json"])
    rep = json.loads(capsys.readouterr().out)
    assert [e["indices"] for e in rep["dual"]] == [[1, 3, 5]]


def test_output_flag(state_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    main(["classify", state_file(OMEGA), "--output", str(out)])
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["rank_label"] == "Rank1_Separable"


def test_bad_input_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", str(bad)]) == EXIT_BAD_INPUT
    unsorted = tmp_path / "unsorted.json"
    unsorted.write_text(json.dumps({"n": 6, "k": 3, "amplitudes": [{"indices": [2, 1, 3], "re": 1, "im": 0}]}))
    assert main(["invariants", str(unsorted)]) == EXIT_BAD_INPUT
    assert main(["classify", str(tmp_path / "missing.json")]) == EXIT_BAD_INPUT
    assert "error" in capsys.readouterr().err


def test_wrong_shape_rejected(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"n": 4, "k": 2, "amplitudes": [{"indices": [1, 2], "re": 1, "im": 0}]}))
    assert main(["classify", str(path)]) == EXIT_BAD_INPUT


def test_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2
    with pytest.raises(ValueError):
        run_suite("no-such-suite")


def test_verify_json_is_reproducible(capsys):
    argv = ["verify", "formula-equality", "--samples", "20", "--seed", "7", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv + ["--workers", "3"]) == 0
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert data["rng"].startswith("numpy") and data["suites"][0]["passed"]


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes_small(suite):
    assert run_suite(suite, samples=10, seed=3).passed


def test_mutation_is_caught():
    # an extra non-invariant quartic term
    def broken_t123(p):
        return t123_eps(p) + 0.1 * p[1, 2, 3] ** 4

    bad = run_suite("sl6-invariance", samples=10, seed=0, sampler=lambda r: sample_sl6_invariance(r, broken_t123))
    assert not bad.passed and bad.failures["t123"] > 0
    bad = run_suite("dual-covariance", samples=10, seed=0, sampler=lambda r: sample_dual_covariance(r, broken_t123))
    assert not bad.passed


def test_paper_examples_command(capsys):
    assert all(r["ok"] for r in paper_example_rows())
    assert main(["paper-examples"]) == 0
    out = capsys.readouterr().out
    assert "Psi" in out and " NO" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "trifermion", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip()
