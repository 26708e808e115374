import json
from pathlib import Path

import pytest

from pelletsim.cli import main

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
NM = str(SCENARIO_DIR / "nm_tracking.json")
SDM = str(SCENARIO_DIR / "sdm_windup.json")


def test_certify_prints_certificate(capsys):
    assert main(["certify", NM]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasible"] is True
    assert doc["tau_d"] == pytest.approx(0.0223143551, rel=1e-6)


def test_simulate_writes_artifacts(tmp_path, capsys):
    code = main(["simulate", NM, "-o", str(tmp_path), "--svg", "--samples-per-tick", "4"])
    assert code == 0
    assert (tmp_path / "trajectory.csv").exists()
    assert (tmp_path / "summary.json").exists()
    assert (tmp_path / "plot.svg").exists()


def test_verify_reports_checks(tmp_path, capsys):
    assert main(["verify", NM, "-o", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "envelope: pass" in out
    assert "windup_detected: False" in out


def test_verify_exit_zero_for_uncertified_but_clean_run(tmp_path, capsys):
    # wind-up variant has no applicable envelope check; nothing fails
    assert main(["verify", SDM, "-o", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "summary.json").read_text())
    assert doc["verify"]["envelope"] == "not_applicable"
    assert doc["verify"]["windup_detected"] is True


def test_sweep_writes_table(tmp_path, capsys):
    code = main([
        "sweep", NM, "-o", str(tmp_path), "--axis", "delta",
        "--values", "1.0,1e15,1.569e16", "--samples-per-tick", "2",
    ])
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert len(lines) == 4


def test_compare_oracle_within_tolerance(capsys):
    assert main(["compare-oracle", NM, "--oracle-steps", "200", "--samples-per-tick", "1"]) == 0
    out = capsys.readouterr().out
    assert "max relative deviation" in out


def test_missing_file_is_usage_error(capsys):
    assert main(["certify", "no_such_file.json"]) == 2


def test_invalid_scenario_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "plant": {"tau": 0.1, "r": 1e19, "alpha": 1e19},
        "actuator": {"t_c": 0.0142857},
        "controller": {"variant": "NM", "delta": 1.0},
        "init": {"x0": 1e19},
        "sim": {"t_end": 0.1},
    }))
    assert main(["certify", str(bad)]) == 2
