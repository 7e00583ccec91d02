"""Exit codes and artifact wiring of the command line front end."""

import json
from pathlib import Path

import pytest
import yaml

from bergman_carleson import cli
from bergman_carleson.errors import ToleranceNotReached


def test_default_equivalence_run(tmp_path, capsys):
    rc = cli.main(["equivalence", "--out", str(tmp_path)])
    assert rc == 0
    printed = Path(capsys.readouterr().out.strip())
    assert (printed / "report.json").exists()
    report = json.loads((printed / "report.json").read_text())
    assert report["results"]["ratio"] == pytest.approx(4.0, abs=1e-9)


def test_flag_overrides_reach_the_report(tmp_path, capsys):
    rc = cli.main(["intensity", "--out", str(tmp_path), "--depth", "4"])
    assert rc == 0
    printed = Path(capsys.readouterr().out.strip())
    report = json.loads((printed / "report.json").read_text())
    assert report["scenario"]["depth"] == 4


def test_scenario_file_run(tmp_path, capsys):
    scenario = {
        "version": 1,
        "kind": "sweep",
        "template": {"kind": "identity_density", "dim": 1},
        "dims": [1, 2],
        "depth": 4,
        "seed": 0,
    }
    path = tmp_path / "sweep.yaml"
    path.write_text(yaml.safe_dump(scenario))
    rc = cli.main(
        ["sweep", "--scenario", str(path), "--out", str(tmp_path / "results")]
    )
    assert rc == 0
    printed = Path(capsys.readouterr().out.strip())
    assert (printed / "curves.csv").exists()


def test_malformed_version_exits_one_without_output(tmp_path, capsys):
    path = tmp_path / "bad.yaml"
    path.write_text(yaml.safe_dump({"version": "two", "kind": "b2", "weight": {}}))
    out_root = tmp_path / "results"
    rc = cli.main(["b2", "--scenario", str(path), "--out", str(out_root)])
    assert rc == 1
    assert not out_root.exists()
    assert "error:" in capsys.readouterr().err


def test_kind_mismatch_exits_one(tmp_path):
    path = tmp_path / "mismatch.yaml"
    path.write_text(
        yaml.safe_dump(
            {
                "version": 1,
                "kind": "equivalence",
                "measure": {"kind": "atom", "point": [0.0, 0.0], "dim": 1},
            }
        )
    )
    assert cli.main(["b2", "--scenario", str(path)]) == 1


def test_tolerance_failure_exits_three(tmp_path, monkeypatch):
    def boom(*args, **kwargs):
        raise ToleranceNotReached(
            "stalled", value=1.0, achieved=1e-3, evaluations=100
        )

    monkeypatch.setattr(cli, "run_scenario", boom)
    assert cli.main(["equivalence", "--out", str(tmp_path)]) == 3


def test_report_subcommand_summarizes_and_replots(tmp_path, capsys):
    assert cli.main(["equivalence", "--out", str(tmp_path)]) == 0
    run_dir = Path(capsys.readouterr().out.strip())
    (run_dir / "plot.svg").unlink()
    rc = cli.main(["report", "--input", str(run_dir)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "kind: equivalence" in out
    assert (run_dir / "plot.svg").exists()


def test_report_subcommand_rejects_garbage(tmp_path):
    path = tmp_path / "report.json"
    path.write_text("[1, 2, 3]")
    assert cli.main(["report", "--input", str(path)]) == 1
