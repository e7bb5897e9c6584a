# -*- coding: utf-8 -*-
"""
Scenario files: key = value lines, [section] headers, # comments. Keys
before the first header belong to the top level. A key may appear once
per section.
"""

import os

from decouple import Csv

from app import log, config
from app.errors import ScenarioError, AppError
from app.model import (
    Params, Scenario, SolverSettings, ProbeSettings, ConstantSettings, BarrierSettings
)

LOG = log.get_logger()

TOP = ""

BOOLEANS = {"1": True, "yes": True, "true": True, "on": True,
            "0": False, "no": False, "false": False, "off": False}

float_list = Csv(cast=float, post_process=tuple)
text_list = Csv(post_process=tuple)


def _optional_float(value):
    return None if value.strip().lower() in ("", "none", "auto") else float(value)


def _boolean(value):
    try:
        return BOOLEANS[value.strip().lower()]
    except KeyError:
        raise ValueError(f"not a boolean: {value!r}")


# section -> key -> (field name, cast)
SCHEMA = {
    TOP: {
        "command": ("command", str),
        "id": ("scenario_id", str),
    },
    "params": {
        "n": ("n", int),
        "p": ("p", float),
        "q": ("q", float),
    },
    "solver": {
        "h": ("h", float),
        "epsilon": ("epsilon", _optional_float),
        "safety": ("safety", float),
        "t_start": ("t_start", float),
        "t_end": ("t_end", _optional_float),
        "snapshots": ("snapshots", float_list),
        "radius": ("radius", float),
        "profile": ("profile", str),
        "amplitude": ("amplitude", float),
        "width": ("width", float),
        "floor": ("floor", float),
        "seed": ("seed", int),
        "boundary": ("boundary", str),
        "grid": ("grid", str),
    },
    "probes": {
        "center": ("center", float_list),
        "radius": ("radius", float),
        "times": ("times", float_list),
        "kinds": ("kinds", text_list),
        "ratio_cap": ("ratio_cap", float),
        "shift_epsilon": ("shift_epsilon", _optional_float),
    },
    "constants": {
        "mu": ("mu", float),
        "c": ("c", float),
        "c_hat": ("c_hat", _optional_float),
        "c_prime": ("c_prime", _optional_float),
        "sigma": ("sigma", float),
        "lambda": ("lam", _optional_float),
        "r": ("r", float),
    },
    "barrier": {
        "radius": ("radius", float),
        "shift": ("shift", _optional_float),
        "t_origin": ("t_origin", _optional_float),
        "lambda": ("lam", _optional_float),
    },
    "output": {
        "csv": ("csv", _boolean),
        "json": ("json", _boolean),
    },
}

MANDATORY = ((TOP, "command"), ("params", "n"), ("params", "p"), ("params", "q"))


def read_entries(lines):
    """Maps (section, key) to (raw value, line number)."""
    entries = {}
    section = TOP
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError(f"malformed section header {raw.strip()!r}", number)
            section = line[1:-1].strip().lower()
            if section not in SCHEMA:
                raise ScenarioError(f"unknown section [{section}]", number)
            continue
        if "=" not in line:
            raise ScenarioError(f"expected key = value, got {raw.strip()!r}", number)
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in SCHEMA[section]:
            where = f"[{section}]" if section else "the top level"
            raise ScenarioError(f"unknown key {key!r} in {where}", number)
        if (section, key) in entries:
            first = entries[(section, key)][1]
            raise ScenarioError(f"duplicate key {key!r} (first defined on line {first})", number)
        entries[(section, key)] = (value, number)
    return entries


def _cast(section, key, value, line):
    name, cast = SCHEMA[section][key]
    try:
        return name, cast(value)
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"invalid value {value!r} for {key!r}: {e}", line)


def _settings(entries, section):
    values = {}
    for (entry_section, key), (value, line) in entries.items():
        if entry_section == section:
            name, cast_value = _cast(section, key, value, line)
            values[name] = cast_value
    return values


def _line(entries, section, key):
    return entries.get((section, key), (None, None))[1]


def build_scenario(entries, default_id="scenario", source=None):
    for section, key in MANDATORY:
        if (section, key) not in entries:
            raise ScenarioError(f"missing mandatory key {key!r}")

    top = _settings(entries, TOP)
    command = top["command"]
    if command not in config.COMMANDS:
        raise ScenarioError(f"unknown command {command!r}; expected one of {', '.join(config.COMMANDS)}",
                            _line(entries, TOP, "command"))

    try:
        params = Params(**_settings(entries, "params"))
    except AppError as e:
        raise ScenarioError(e.description, _line(entries, "params", "q"))
    if command in config.SINGULAR_RANGE_COMMANDS and not params.q < 2.0:
        raise ScenarioError(f"command {command} needs 1 < q < 2, got q={params.q}",
                            _line(entries, "params", "q"))

    solver = SolverSettings(**_settings(entries, "solver"))
    snapshots = solver.snapshots
    if any(b <= a for a, b in zip(snapshots, snapshots[1:])):
        raise ScenarioError("snapshot times must be strictly increasing", _line(entries, "solver", "snapshots"))
    if solver.grid not in (config.GRID_RADIAL, config.GRID_PLANAR):
        raise ScenarioError(f"unknown grid {solver.grid!r}", _line(entries, "solver", "grid"))
    if not solver.h > 0 or not solver.radius > 0:
        raise ScenarioError("h and radius must be positive", _line(entries, "solver", "h"))

    probes = ProbeSettings(**_settings(entries, "probes"))
    unknown = [kind for kind in probes.kinds if kind not in config.RATIO_KINDS]
    if unknown:
        raise ScenarioError(f"unknown ratio kinds {unknown}", _line(entries, "probes", "kinds"))
    times = probes.times
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ScenarioError("probe times must be strictly increasing", _line(entries, "probes", "times"))

    outputs = {"csv": True, "json": True}
    outputs.update(_settings(entries, "output"))
    return Scenario(command=command, params=params, scenario_id=top.get("scenario_id", default_id),
                    solver=solver, probes=probes, constants=ConstantSettings(**_settings(entries, "constants")),
                    barrier=BarrierSettings(**_settings(entries, "barrier")), outputs=outputs, source=source)


def parse_text(text, default_id="scenario", source=None):
    return build_scenario(read_entries(text.splitlines()), default_id, source)


def parse_scenario(path):
    if not os.path.isfile(path):
        raise ScenarioError(f"scenario file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    default_id = os.path.splitext(os.path.basename(path))[0]
    scenario = parse_text(text, default_id, source=path)
    LOG.info(f"Parsed scenario {scenario.scenario_id} ({scenario.command}) from {path}")
    return scenario
