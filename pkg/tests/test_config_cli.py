import json
import subprocess
import sys
from pathlib import Path

import pytest

from rovsim.cli import main
from rovsim.config import ConfigError, load_config, parse_config
from rovsim.scene import scene_from_json

from conftest import DATA_DIR, EXP1_TEXT


def write_exp1_config(tmp_path: Path, **run_overrides) -> Path:
    config = {
        "run": {
            "frame_limit": 64,
            "mode": "without_input",
            "predefined_instructions": [EXP1_TEXT],
            **run_overrides,
        },
        "provider": {"kind": "replay", "fixtures": str(DATA_DIR / "fixtures_experiments.json")},
        "world": {"seed": 11, "counts": {"oyster": 5, "rock": 3}},
        "camera": {"width": 320, "height": 240},
        "snapshot": {"enabled": True, "width": 40, "height": 40},
        "output_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "settings.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


# -- config parsing -------------------------------------------------------------


def test_defaults_parse_from_empty_document():
    config = parse_config({})
    assert config.run.frame_limit == 1000
    assert config.run.action_interval_frames == 8
    assert config.provider.kind == "replay"
    assert config.service_port == 8000


def test_unknown_keys_are_named():
    with pytest.raises(ConfigError, match="run.frames"):
        parse_config({"run": {"frames": 10}})


def test_bad_values_carry_field_paths():
    with pytest.raises(ConfigError, match="run"):
        parse_config({"run": {"frame_limit": -5}})
    with pytest.raises(ConfigError, match="world.counts.kraken"):
        parse_config({"world": {"counts": {"kraken": 3}}})
    with pytest.raises(ConfigError, match="service_port"):
        parse_config({"service_port": 99999})
    with pytest.raises(ConfigError, match="provider"):
        parse_config({"provider": {"kind": "http"}})  # endpoint missing


def test_relative_fixtures_resolve_against_config_dir(tmp_path):
    fixtures = tmp_path / "fx.json"
    fixtures.write_text("{}", encoding="utf-8")
    path = tmp_path / "cfg.json"
    path.write_text(
        json.dumps({"provider": {"kind": "replay", "fixtures": "fx.json"}, "output_dir": "out"}),
        encoding="utf-8",
    )
    config = load_config(path)
    assert Path(config.provider.fixtures_path) == fixtures
    assert config.output_dir == "out"  # relative to the invocation directory


# -- cli run ----------------------------------------------------------------------


def test_cli_run_experiment_one(tmp_path, capsys):
    config_path = write_exp1_config(tmp_path)
    assert main(["run", "--config", str(config_path)]) == 0

    out = tmp_path / "out"
    scene = scene_from_json((out / "scene.json").read_text(encoding="utf-8"))
    assert scene.agent.position.to_list() == [15.0, 25.0, 0.0]

    trajectory = (out / "trajectory.jsonl").read_text(encoding="utf-8").splitlines()
    assert len(trajectory) == 65  # frame 0 plus one per advanced frame
    assert (out / "captures.jsonl").exists()
    assert (out / "transcript.jsonl").exists()
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["status"] == "ok"
    assert report["frames_executed"] == 64
    snapshots = {p.name for p in out.glob("capture_*.ppm")}
    assert snapshots == {f"capture_{frame}.ppm" for frame in range(8, 65, 8)}


def test_cli_rerun_is_byte_identical(tmp_path):
    config_path = write_exp1_config(tmp_path)
    assert main(["run", "--config", str(config_path), "--output", str(tmp_path / "a")]) == 0
    assert main(["run", "--config", str(config_path), "--output", str(tmp_path / "b")]) == 0
    a, b = tmp_path / "a", tmp_path / "b"
    names_a = sorted(p.name for p in a.iterdir())
    names_b = sorted(p.name for p in b.iterdir())
    assert names_a == names_b
    for name in names_a:
        if name == "transcript.jsonl":
            continue  # carries wall-clock timestamps
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


def test_cli_run_bad_config_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"run": {"frame_limit": -1}}), encoding="utf-8")
    assert main(["run", "--config", str(path)]) == 2
    assert "frame_limit" in capsys.readouterr().err


def test_cli_provider_hard_failure_is_nonzero(tmp_path):
    fixtures = tmp_path / "fx.json"
    fixtures.write_text("{}", encoding="utf-8")  # misses every instruction
    config = {
        "run": {"frame_limit": 16, "predefined_instructions": ["no fixture for this"]},
        "provider": {"kind": "replay", "fixtures": str(fixtures)},
        "output_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    assert main(["run", "--config", str(path)]) == 1


def test_cli_replay_without_fixtures_fails_clearly(tmp_path, capsys):
    config = {
        "run": {"frame_limit": 16},
        "provider": {"kind": "replay"},
        "output_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    assert main(["run", "--config", str(path)]) == 1
    assert "fixtures" in capsys.readouterr().err


# -- cli validate -----------------------------------------------------------------


def test_cli_validate_clean_script(tmp_path, capsys, experiment_fixtures):
    from rovsim.chatscript import extract_script
    from conftest import EXP2_TEXT

    script = tmp_path / "good.cs"
    script.write_text(extract_script(experiment_fixtures[EXP2_TEXT]), encoding="utf-8")
    assert main(["validate", str(script)]) == 0
    assert capsys.readouterr().out == ""


def test_cli_validate_findings_printed_one_per_line(tmp_path, capsys):
    script = tmp_path / "bad.cs"
    script.write_text("launch_torpedo(1)\nset_yaw()\n", encoding="utf-8")
    assert main(["validate", str(script)]) == 1
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("1:1 UnknownFunction")
    assert lines[1].startswith("2:1 ArityMismatch")


def test_cli_validate_unreadable_path(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "missing.cs")]) == 2


def test_console_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "rovsim.cli", "--help"], capture_output=True, text=True
    )
    assert result.returncode == 0
    assert "run" in result.stdout and "validate" in result.stdout and "serve" in result.stdout
