import json
import os

import numpy as np
import pytest

from srskit import cli, fileio
from srskit.errors import ConfigError
from srskit.pipeline import apply_overrides, run_pipeline, run_sweep
from srskit.configio import load_gait_settings

FAST = {
    "samples_per_period": 4,
    "samples_per_curve": 21,
    "starts": 2,
    "maxiter": 200,
}


def _gait_path(configs_dir, name="planar_rolling.ini"):
    return os.path.join(configs_dir, name)


def _robot_path(configs_dir):
    return os.path.join(configs_dir, "robot.ini")


def test_run_pipeline_artifacts(tmp_path, configs_dir):
    out = tmp_path / "out"
    manifest = run_pipeline(
        _robot_path(configs_dir),
        _gait_path(configs_dir),
        out,
        overrides=dict(FAST, duration=2.0),
    )
    for name in ("curves.csv", "joints.csv", "joints.json", "schedule.csv", "manifest.json"):
        assert (out / name).exists()
    assert manifest["schema_version"] == 1
    assert manifest["kind"] == "planar_rolling"
    assert manifest["frames"] == 4
    assert manifest["schedule"]["samples"] == 40
    assert manifest["residuals"]["mean"] < 1e-6
    assert manifest["unconverged_fraction"] == 0.0
    assert len(manifest["configs"]["robot"]["sha256"]) == 64
    # manifest checksums match the files on disk
    for entry in manifest["outputs"].values():
        assert fileio.sha256_of_file(out / entry["path"]) == entry["sha256"]
    # the stored trajectory reloads
    traj = fileio.read_joints_json(out / "joints.json")
    assert len(traj) == 4
    assert manifest["residuals"]["mean"] == pytest.approx(traj.residuals.mean())


def test_run_pipeline_is_deterministic(tmp_path, configs_dir):
    kw = dict(overrides=dict(FAST, duration=1.0), seed=3)
    a = run_pipeline(_robot_path(configs_dir), _gait_path(configs_dir), tmp_path / "a", **kw)
    b = run_pipeline(_robot_path(configs_dir), _gait_path(configs_dir), tmp_path / "b", **kw)
    assert a["outputs"] == b["outputs"]


def test_unknown_override_rejected(configs_dir):
    settings = load_gait_settings(_gait_path(configs_dir))
    with pytest.raises(ConfigError):
        apply_overrides(settings, {"warp_factor": 9})


def test_run_sweep_grid(tmp_path, configs_dir):
    out = tmp_path / "sweep"
    manifest = run_sweep(
        _robot_path(configs_dir),
        _gait_path(configs_dir),
        out,
        frequencies=[0.5, 1.0],
        amplitude_scales=[0.5, 1.0],
        overrides=dict(FAST, duration=1.0),
    )
    assert len(manifest["runs"]) == 4
    for entry in manifest["runs"]:
        path = out / entry["path"]
        assert path.exists()
        assert entry["period"] == pytest.approx(1.0 / entry["frequency"])
    assert (out / "sweep_manifest.json").exists()


def _cli(args):
    return cli.main(args)


def _fast_flags():
    return ["--nt", "4", "--ns", "21"]


def test_cli_gait_and_run(tmp_path, configs_dir):
    out = tmp_path / "cli_out"
    rc = _cli(
        ["gait", "-g", "planar_rolling.ini", "-o", str(out), "--config-dir", configs_dir]
        + _fast_flags()
    )
    assert rc == 0
    assert (out / "curves.csv").exists()
    rc = _cli(
        ["run", "-g", "planar_rolling.ini", "-o", str(out), "--config-dir", configs_dir,
         "--duration", "1.0"]
        + _fast_flags()
    )
    assert rc == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["frames"] == 4


def test_cli_ik_then_schedule_reuse(tmp_path, configs_dir):
    out = tmp_path / "cli_ik"
    rc = _cli(
        ["ik", "-g", "planar_rolling.ini", "-o", str(out), "--config-dir", configs_dir]
        + _fast_flags()
    )
    assert rc == 0
    rc = _cli(
        ["schedule", "-g", "planar_rolling.ini", "-o", str(out), "--config-dir",
         configs_dir, "-t", str(out / "joints.json"), "--duration", "1.0"]
    )
    assert rc == 0
    lines = (out / "schedule.csv").read_text().strip().split("\n")
    assert len(lines) == 1 + 20


def test_cli_missing_config_exits_2_without_outputs(tmp_path, configs_dir):
    out = tmp_path / "never"
    rc = _cli(
        ["run", "-g", "no_such.ini", "-o", str(out), "--config-dir", configs_dir]
    )
    assert rc == 2
    assert not out.exists()


def test_cli_bad_sweep_range_exits_2(tmp_path, configs_dir):
    rc = _cli(
        ["sweep", "-g", "planar_rolling.ini", "-o", str(tmp_path / "s"),
         "--config-dir", configs_dir, "--f-start", "1.0", "--f-stop", "0.5"]
    )
    assert rc == 2


def test_cli_env_config_dir(tmp_path, configs_dir, monkeypatch):
    monkeypatch.setenv("SRSKIT_CONFIG_DIR", configs_dir)
    monkeypatch.chdir(tmp_path)
    out = tmp_path / "env_out"
    rc = _cli(["gait", "-g", "planar_rolling.ini", "-o", str(out)] + _fast_flags())
    assert rc == 0
    assert (out / "curves.csv").exists()


def test_cli_phase_shift_override(tmp_path, configs_dir):
    out = tmp_path / "ps"
    rc = _cli(
        ["gait", "-g", "planar_rolling.ini", "-o", str(out), "--config-dir",
         configs_dir, "--phase-shift", str(np.pi / 3.0)]
        + _fast_flags()
    )
    assert rc == 0
