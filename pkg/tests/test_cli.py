"""End-to-end tests of the command-line interface and its reports."""

import json

import pytest
from pydantic import ValidationError

from src.cli import main
from src.report import RunConfig, run_check


@pytest.fixture
def witness_file(tmp_path):
    """Two identical columns (0, 1): the sharp two-point dataset."""
    path = tmp_path / "witness.csv"
    path.write_text("0,0\n1,1\n")
    return str(path)


def read_report(path):
    with open(path) as f:
        return json.load(f)


def test_check_witness_is_certified(witness_file, tmp_path):
    """The sharp dataset meets both bounds exactly and exits 0."""
    out = tmp_path / "report.json"
    code = main(["check", "--input", witness_file, "--bracket-x", "0,1", "--bracket-y", "0,1",
                 "--out", str(out)])
    assert code == 0
    report = read_report(out)
    assert report["schema_version"] == 1
    assert report["certified"] is True
    assert report["exit_code"] == 0
    (pair,) = report["pairs"]
    assert pair["columns"] == [0, 1]
    assert pair["gruss"]["abs_functional"] == pytest.approx(0.25)
    assert pair["gruss"]["classic_bound"] == pytest.approx(0.25)
    assert pair["gruss"]["refined_bound"] == pytest.approx(0.25)
    assert pair["companion"]["value"] == pytest.approx(0.25)


def test_check_violated_bracket_exits_1(witness_file, tmp_path):
    """A bracket that excludes a data point fails strict mode but still reports."""
    out = tmp_path / "report.json"
    code = main(["check", "--input", witness_file, "--bracket-x", "0,0.5", "--bracket-y", "0,1",
                 "--out", str(out)])
    assert code == 1
    report = read_report(out)
    assert report["certified"] is False
    assert report["pairs"][0]["gruss"]["cond_x"]["satisfied"] is False
    assert report["pairs"][0]["companion"]["certified"] is True
    assert report["pairs"][0]["certified"] is False
    assert "violated" in report["pairs"][0]["error"]


def test_check_diagnostic_mode_exits_0(witness_file, tmp_path):
    """Diagnostic mode annotates instead of failing."""
    out = tmp_path / "report.json"
    code = main(["check", "--input", witness_file, "--bracket-x", "0,0.5", "--bracket-y", "0,1",
                 "--mode", "diagnostic", "--out", str(out)])
    assert code == 0
    report = read_report(out)
    assert report["certified"] is False
    assert report["pairs"][0]["error"] is None


def test_check_input_errors_exit_2(witness_file, tmp_path):
    """Missing files, missing brackets and malformed flags are input errors."""
    assert main(["check", "--input", str(tmp_path / "missing.csv"), "--bracket-x", "0,1",
                 "--bracket-y", "0,1"]) == 2
    assert main(["check", "--input", witness_file]) == 2
    assert main(["check", "--input", witness_file, "--bracket-x", "0", "--bracket-y", "0,1"]) == 2
    assert main(["check", "--input", witness_file, "--estimate-brackets",
                 "--metric", "grid:0,1,3"]) == 2


def test_check_complex_field_with_disk_bracket(witness_file, tmp_path):
    """Real-valued columns under --field complex accept a complex disk bracket."""
    out = tmp_path / "report.json"
    disk = "0.5-0.5i,0.5+0.5i"
    code = main(["check", "--input", witness_file, "--field", "complex",
                 "--bracket-x", disk, "--bracket-y", disk, "--out", str(out)])
    assert code == 0
    report = read_report(out)
    assert report["certified"] is True
    (pair,) = report["pairs"]
    assert pair["gruss"]["field"] == "complex"
    assert pair["gruss"]["cond_x"]["satisfied"] is True
    assert pair["gruss"]["abs_functional"] == pytest.approx(0.25)
    assert pair["bracket_x"]["lo"]["im"] == -0.5

    assert main(["check", "--input", witness_file, "--bracket-x", disk,
                 "--bracket-y", disk]) == 2


def test_check_estimated_brackets(witness_file, tmp_path):
    """Estimated brackets are echoed into the report."""
    out = tmp_path / "report.json"
    code = main(["check", "--input", witness_file, "--estimate-brackets", "--out", str(out)])
    assert code == 0
    report = read_report(out)
    assert [e["column"] for e in report["estimates"]] == [0, 1]
    assert report["dataset"]["points"] == 2
    bracket = report["pairs"][0]["bracket_x"]
    assert bracket["estimated"] is True
    assert (bracket["lo"]["re"], bracket["hi"]["re"]) == (0.0, 1.0)


def test_check_grid_metric(tmp_path):
    """Midpoint-rule weights on a step function reproduce the sharp value."""
    data = tmp_path / "step.csv"
    data.write_text("".join("0,0\n" if k < 2 else "1,1\n" for k in range(4)))
    out = tmp_path / "report.json"
    code = main(["check", "--input", str(data), "--metric", "grid:0,1,4,midpoint",
                 "--bracket-x", "0,1", "--bracket-y", "0,1", "--out", str(out)])
    assert code == 0
    assert read_report(out)["pairs"][0]["gruss"]["abs_functional"] == pytest.approx(0.25)


def test_estimate_command(tmp_path, capsys):
    """Real column (0.2, 0.8, 0.5) gives the bracket (0.2, 0.8) on stdout."""
    data = tmp_path / "column.txt"
    data.write_text("0.2\n0.8\n0.5\n")
    assert main(["estimate", "--input", str(data)]) == 0
    report = json.loads(capsys.readouterr().out)
    bracket = report["estimates"][0]["bracket"]
    assert bracket["lo"]["re"] == 0.2
    assert bracket["hi"]["re"] == 0.8
    assert bracket["cover_slack"] == pytest.approx(0.0, abs=1e-15)
    assert report["dataset"] == {"points": 3, "functions": 1, "max_abs": [0.8]}


def test_fuzz_is_byte_identical(tmp_path):
    """Same seed, same report bytes."""
    out = tmp_path / "fuzz.json"
    args = ["fuzz", "--seed", "42", "--samples", "200", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == first
    report = json.loads(first)
    assert report["fuzz"]["seed"] == 42
    assert sum(report["fuzz"]["violations"].values()) == 0


def test_sharpness_command(tmp_path):
    """Classic sharpness in dimension 2 reaches the constant."""
    out = tmp_path / "sharp.json"
    assert main(["sharpness", "--dims", "2", "--samples", "300", "--out", str(out)]) == 0
    result = read_report(out)["sharpness"]
    assert result["best_ratio"] >= 0.999
    assert result["witness"]["bracket_x"]["hi"] == [1.0, 0.0]


def test_run_config_validation():
    """Malformed metric specs and brackets are rejected at configuration time."""
    with pytest.raises(ValidationError):
        RunConfig(command="check", metric="uniform")
    with pytest.raises(ValidationError):
        RunConfig(command="check", bracket_x="0,nan")
    with pytest.raises(ValidationError):
        RunConfig(command="check", metric="grid:1,0,4")
    assert RunConfig(command="check", metric="grid:0,1,4,simpson").metric == "grid:0,1,4,simpson"


def test_run_check_single_column(tmp_path):
    """A single column is paired with itself."""
    data = tmp_path / "single.csv"
    data.write_text("0\n1\n")
    report = run_check(RunConfig(command="check", input=str(data), estimate_brackets=True))
    assert [p.columns for p in report.pairs] == [(0, 0)]
    assert report.pairs[0].gruss.abs_functional == pytest.approx(0.25)
    assert report.exit_code == 0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
