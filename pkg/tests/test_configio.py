import math

import pytest

from srskit.configio import (
    load_gait_settings,
    load_robot_config,
    parse_number,
)
from srskit.errors import ConfigError


def test_parse_number_plain_and_expressions():
    assert parse_number("0.25") == 0.25
    assert parse_number("1e-3") == 1e-3
    assert parse_number("-0.5") == -0.5
    assert math.isclose(parse_number("pi/3"), math.pi / 3.0)
    assert math.isclose(parse_number("2*pi"), 2.0 * math.pi)
    assert math.isclose(parse_number("pi/2 - 0.1"), math.pi / 2.0 - 0.1)


@pytest.mark.parametrize("bad", ["", "two", "pi**2", "__import__('os')", "1/0", "tau"])
def test_parse_number_rejects_garbage(bad):
    with pytest.raises(ConfigError):
        parse_number(bad)


def test_load_robot_defaults(configs_dir):
    robot = load_robot_config(f"{configs_dir}/robot.ini")
    assert robot.bending_length == pytest.approx(0.96)
    assert robot.total_length == pytest.approx(1.11)
    assert robot.sections[0].trailing_offset == 0.05
    assert robot.sections[3].trailing_offset == 0.0
    assert robot.sections[0].min_joint == pytest.approx(-0.35 * 0.24)


def test_robot_overrides_and_errors(tmp_path):
    good = tmp_path / "r.ini"
    good.write_text(
        "[robot]\neps_extend = 0.2\n[section]\nbackbone_length = 0.3\n"
        "[section2]\nbackbone_length = 0.1\n"
    )
    robot = load_robot_config(good)
    assert robot.sections[0].backbone_length == 0.3
    assert robot.sections[1].backbone_length == 0.1
    assert robot.sections[0].eps_extend == 0.2

    bad_key = tmp_path / "bad_key.ini"
    bad_key.write_text("[section]\nbackbone = 0.3\n")
    with pytest.raises(ConfigError):
        load_robot_config(bad_key)

    bad_section = tmp_path / "bad_section.ini"
    bad_section.write_text("[motor]\nx = 1\n")
    with pytest.raises(ConfigError):
        load_robot_config(bad_section)

    bad_value = tmp_path / "bad_value.ini"
    bad_value.write_text("[section]\nbackbone_length = -1\n")
    with pytest.raises(ConfigError):
        load_robot_config(bad_value)


def test_missing_file_is_config_error():
    with pytest.raises(ConfigError):
        load_robot_config("/nonexistent/robot.ini")
    with pytest.raises(ConfigError):
        load_gait_settings("/nonexistent/gait.ini")


def test_load_all_shipped_gait_files(configs_dir):
    sw = load_gait_settings(f"{configs_dir}/sidewinding.ini")
    assert sw.kind == "sidewinding"
    assert sw.gait.phase == pytest.approx(math.pi / 3.0)
    assert sw.schedule.sample_count == 240

    hel = load_gait_settings(f"{configs_dir}/helical_rolling.ini")
    assert hel.kind == "helical_rolling"
    assert hel.gait.phase_shift == pytest.approx(math.pi / 3.0)
    assert hel.gait.rotation_rate == pytest.approx(2.0 * math.pi)

    pl = load_gait_settings(f"{configs_dir}/planar_rolling.ini")
    assert pl.kind == "planar_rolling"
    assert pl.gait.phase_shift == 0.0


def test_planar_rolling_phase_default(tmp_path):
    path = tmp_path / "g.ini"
    path.write_text("[gait]\nkind = planar_rolling\n")
    assert load_gait_settings(path).gait.phase_shift == 0.0
    path.write_text("[gait]\nkind = helical_rolling\n")
    assert load_gait_settings(path).gait.phase_shift == pytest.approx(math.pi / 3.0)


def test_gait_file_errors(tmp_path):
    path = tmp_path / "g.ini"
    path.write_text("[solver]\nlam = 1\n")
    with pytest.raises(ConfigError):
        load_gait_settings(path)  # missing [gait]
    path.write_text("[gait]\nkind = trotting\n")
    with pytest.raises(ConfigError):
        load_gait_settings(path)
    path.write_text("[gait]\nkind = sidewinding\nspeed = 3\n")
    with pytest.raises(ConfigError):
        load_gait_settings(path)
    path.write_text("[gait]\nkind = sidewinding\n[sidewinding]\nwobble = 2\n")
    with pytest.raises(ConfigError):
        load_gait_settings(path)
    path.write_text("[gait]\nkind = sidewinding\n[sidewinding]\namplitude_y = -1\n")
    with pytest.raises(ConfigError):
        load_gait_settings(path)


def test_integer_fields_are_coerced(tmp_path):
    path = tmp_path / "g.ini"
    path.write_text(
        "[gait]\nkind = sidewinding\n[sidewinding]\nsamples_per_period = 10\n"
        "[solver]\nstarts = 4\n"
    )
    settings = load_gait_settings(path)
    assert settings.gait.samples_per_period == 10
    assert isinstance(settings.gait.samples_per_period, int)
    assert settings.solver.starts == 4
