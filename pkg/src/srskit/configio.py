"""Plain-text (INI style) configuration files for robot and gait settings.

Robot file::

    [robot]
    eps_extend = 0.35
    eps_contract = 0.35
    [section]              ; defaults shared by all four sections
    backbone_length = 0.240
    actuator_pitch_radius = 0.020
    skin_radius = 0.020
    trailing_offset = 0.050
    [section4]             ; per-section overrides
    trailing_offset = 0

Gait file::

    [gait]
    kind = sidewinding     ; or planar_rolling / helical_rolling
    [sidewinding] / [rolling]
    ...gait parameters...
    [solver]
    lam = 1.0
    [pressure]
    gain = 40.0
    [schedule]
    rate = 20

Numeric values may use simple expressions of ``pi`` such as ``pi/3``.
"""

from __future__ import annotations

import ast
import configparser
import math
import operator
from dataclasses import dataclass, fields, replace

from .errors import ConfigError
from .gaits import RollingParams, SidewindingParams
from .pressure import ControlSchedule, PressureMap
from .robot import NUM_SECTIONS, RobotConfig
from .sections import SectionConfig

_BIN_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def parse_number(text: str) -> float:
    """Parse a float, allowing +-*/ expressions of numbers and ``pi``."""
    try:
        return float(text)
    except ValueError:
        pass

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = ev(node.operand)
            return v if isinstance(node.op, ast.UAdd) else -v
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN_OPS:
            return _BIN_OPS[type(node.op)](ev(node.left), ev(node.right))
        raise ConfigError(f"unsupported expression {text!r}")

    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse number {text!r}") from exc


@dataclass
class SolverSettings:
    """IK solver knobs shared by every frame of a period."""

    lam: float = 1.0
    starts: int = 8
    maxiter: int = 400
    smoothness_bound: float = 0.02
    max_unconverged_frac: float = 0.2


@dataclass
class GaitSettings:
    """Everything the pipeline needs besides the robot geometry."""

    kind: str
    gait: SidewindingParams | RollingParams
    solver: SolverSettings
    pressure: PressureMap
    schedule: ControlSchedule


def _read_ini(path) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    return parser


def _section_as_numbers(parser, name, allowed, path) -> dict:
    if not parser.has_section(name):
        return {}
    out = {}
    for key, raw in parser.items(name):
        if key not in allowed:
            raise ConfigError(f"{path}: unknown key {key!r} in section [{name}]")
        out[key] = parse_number(raw)
    return out


_SECTION_KEYS = (
    "backbone_length",
    "actuator_pitch_radius",
    "skin_radius",
    "trailing_offset",
    "eps_extend",
    "eps_contract",
)
_ROBOT_KEYS = ("eps_extend", "eps_contract")


def load_robot_config(path) -> RobotConfig:
    parser = _read_ini(path)
    for name in parser.sections():
        if name not in ("robot", "section") and not (
            name.startswith("section") and name[7:].isdigit() and name != "section"
        ):
            raise ConfigError(f"{path}: unknown section [{name}]")
    robot_kv = _section_as_numbers(parser, "robot", _ROBOT_KEYS, path)
    shared = _section_as_numbers(parser, "section", _SECTION_KEYS, path)
    shared.update(robot_kv)
    sections = []
    for i in range(1, NUM_SECTIONS + 1):
        kv = dict(shared)
        kv.update(_section_as_numbers(parser, f"section{i}", _SECTION_KEYS, path))
        if i == NUM_SECTIONS:
            kv.setdefault("trailing_offset", 0.0)
        try:
            sections.append(replace(SectionConfig(), **kv))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: bad geometry for section {i}: {exc}") from exc
    return RobotConfig(tuple(sections))


_GAIT_KINDS = ("sidewinding", "planar_rolling", "helical_rolling")


def _params_from(parser, name, cls, path, defaults=None):
    allowed = {f.name for f in fields(cls)}
    kv = _section_as_numbers(parser, name, allowed, path)
    merged = dict(defaults or {})
    merged.update(kv)
    for key in ("samples_per_period", "samples_per_curve", "starts", "maxiter"):
        if key in merged:
            merged[key] = int(round(merged[key]))
    try:
        return cls(**merged)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: bad [{name}] settings: {exc}") from exc


def load_gait_settings(path) -> GaitSettings:
    parser = _read_ini(path)
    known = {"gait", "sidewinding", "rolling", "solver", "pressure", "schedule"}
    for name in parser.sections():
        if name not in known:
            raise ConfigError(f"{path}: unknown section [{name}]")
    if not parser.has_section("gait") or not parser.has_option("gait", "kind"):
        raise ConfigError(f"{path}: missing [gait] kind")
    kind = parser.get("gait", "kind").strip()
    if kind not in _GAIT_KINDS:
        raise ConfigError(f"{path}: unknown gait kind {kind!r}")
    extra = set(parser.options("gait")) - {"kind"}
    if extra:
        raise ConfigError(f"{path}: unknown key(s) {sorted(extra)} in [gait]")
    if kind == "sidewinding":
        gait = _params_from(parser, "sidewinding", SidewindingParams, path)
    else:
        defaults = {"phase_shift": 0.0 if kind == "planar_rolling" else math.pi / 3.0}
        gait = _params_from(parser, "rolling", RollingParams, path, defaults)
    solver = _params_from(parser, "solver", SolverSettings, path)
    pmap = _params_from(parser, "pressure", PressureMap, path)
    schedule = _params_from(parser, "schedule", ControlSchedule, path)
    return GaitSettings(kind=kind, gait=gait, solver=solver, pressure=pmap, schedule=schedule)
