import json

import numpy as np
import pytest

from maxspec import save_matrix, spectrum
from maxspec.cli import RunConfig, cmd_verify, main


@pytest.fixture
def diag_file(tmp_path):
    path = tmp_path / "diag.csv"
    save_matrix(str(path), np.diag([1.0, 2.0]))
    return str(path)


@pytest.fixture
def balanced_file(tmp_path):
    path = tmp_path / "bal.json"
    save_matrix(str(path), np.array([[0.0, 1.0 / 3.0], [1.0 / 3.0, 0.0]]))
    return str(path)


def test_spectrum_text(diag_file, capsys):
    assert main(["spectrum", "--input", diag_file]) == 0
    out = capsys.readouterr().out
    assert "sigma_max:  {1, 2}" in out
    assert "sigma_dist: {1, 2}" in out


def test_spectrum_json_roundtrip(diag_file, capsys):
    assert main(["spectrum", "--input", diag_file, "--format", "json",
                 "--eigenvectors"]) == 0
    data = json.loads(capsys.readouterr().out)
    prof = spectrum(np.diag([1.0, 2.0]))
    assert data["sigma_max"] == list(prof.sigma_max)
    assert data["sigma_dist"] == list(prof.sigma_dist)
    assert data["r"] == list(prof.r)
    assert data["rho"] == list(prof.rho)
    # one verified eigenvector per spectral value, both semirings
    assert len(data["eigenvectors"]) == 4
    for row in data["eigenvectors"]:
        assert row["residual"] <= 1e-9 * max(1.0, abs(row["value"]))


def test_spectrum_eigenvectors_text(balanced_file, capsys):
    assert main(["spectrum", "--input", balanced_file, "--eigenvectors"]) == 0
    out = capsys.readouterr().out
    assert "eigenvector max" in out
    assert "eigenvector dist" in out


def test_asymptotics_text_all_ok(balanced_file, capsys):
    rc = main(["asymptotics", "--input", balanced_file, "--which", "classpow",
               "-i", "0", "--k-max", "16"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "FAIL" not in out
    assert "limit=0.333333" in out


def test_asymptotics_json(balanced_file, capsys):
    rc = main(["asymptotics", "--input", balanced_file, "--which", "schur",
               "--format", "json", "--t-max", "6"])
    data = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert data["limit"] == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert all(data["checks"].values())
    assert len(data["grid"]) == 7


def test_asymptotics_bad_index(diag_file):
    assert main(["asymptotics", "--input", diag_file, "--which", "schur",
                 "-i", "9"]) == 2


def test_missing_input_file_is_usage_error():
    assert main(["spectrum", "--input", "/nonexistent/file.csv"]) == 2


def test_bad_arguments_are_usage_errors():
    assert main(["spectrum"]) == 2
    assert main(["asymptotics", "--input", "x", "--which", "bogus"]) == 2
    assert main([]) == 2


def test_verify_passes_and_confirms_fixtures(capsys):
    rc = main(["verify", "--trials", "3", "--seed", "5"])
    out = capsys.readouterr().out
    assert rc == 0
    violated = [ln for ln in out.splitlines() if ln.startswith("violated")]
    assert len(violated) == 2  # the two pinned counterexamples
    assert "summary:" in out


def test_verify_json_lines(capsys):
    rc = main(["verify", "--trials", "2", "--json"])
    out = capsys.readouterr().out
    assert rc == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert all(set(d) == {"name", "lhs", "rhs", "slack", "verdict", "digest",
                          "detail"} for d in lines)
    fixtures = [d for d in lines if d["detail"].get("fixture")]
    assert len(fixtures) == 2
    assert all(d["detail"]["fixture"] == "confirmed" for d in fixtures)


def test_verify_detects_corrupted_pinned_expectation(capsys):
    config = RunConfig(trials=2, json_lines=True, pinned_expected=(
        ("ce_local_product", 1.0, 0.5),   # wrong rhs
        ("ce_local_transpose", 0.5, 0.25),
    ))
    assert cmd_verify(config) == 1
    lines = [json.loads(line)
             for line in capsys.readouterr().out.strip().splitlines()]
    marks = {d["name"]: d["detail"]["fixture"]
             for d in lines if d["detail"].get("fixture")}
    assert marks == {"ce_local_product": "MISMATCH",
                     "ce_local_transpose": "confirmed"}


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(trials=0)
    with pytest.raises(ValueError):
        RunConfig(k_max=0)
