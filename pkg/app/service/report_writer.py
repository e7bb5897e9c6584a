# -*- coding: utf-8 -*-
"""
CSV and JSON outputs. Floats are written with 17 significant digits so
reruns of a scenario produce byte-identical files.
"""

import csv
import json
import math
import os

import numpy as np

from app import log, config

LOG = log.get_logger()

REPORT_HEADER = ["scenario", "quantity", "value", "tolerance", "pass"]
RATIO_HEADER = ["t", "r", "kind", "center", "u0", "theta", "ratio", "bound", "pass"]


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{config.CSV_PRECISION}g")
    return str(value)


def _writer(path):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    handle = open(path, "w", newline="", encoding="utf-8")
    return handle, csv.writer(handle, lineterminator="\n")


def write_report_csv(rows, path):
    handle, writer = _writer(path)
    with handle:
        writer.writerow(REPORT_HEADER)
        for row in rows:
            writer.writerow([row.scenario_id, row.quantity, format_value(row.value),
                             format_value(row.tolerance), format_value(row.passed)])
    return path


def write_grid_csv(trajectory, path):
    """One row per (time, node index)."""
    handle, writer = _writer(path)
    with handle:
        first = trajectory.initial
        if first.kind == config.GRID_RADIAL:
            writer.writerow(["time", "index", "r", "value"])
            for state in trajectory:
                for i, (r, value) in enumerate(zip(state.radii(), state.values)):
                    writer.writerow([format_value(state.time), i, format_value(r), format_value(value)])
        else:
            writer.writerow(["time", "i", "j", "x", "y", "value"])
            axis = first.axis()
            for state in trajectory:
                for (i, j), value in np.ndenumerate(state.values):
                    writer.writerow([format_value(state.time), i, j, format_value(axis[i]),
                                     format_value(axis[j]), format_value(value)])
    return path


def write_ratio_csv(reports, path):
    handle, writer = _writer(path)
    with handle:
        writer.writerow(RATIO_HEADER)
        for report in reports:
            writer.writerow([format_value(report.t0), format_value(report.r), report.kind,
                             " ".join(format_value(x) for x in report.center), format_value(report.u0),
                             format_value(report.theta), format_value(report.ratio),
                             format_value(report.bound_used), format_value(report.passed)])
    return path


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    return value


def write_json(payload, path):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True))
        f.write("\n")
    return path


def write_outputs(scenario, out_dir, rows, trajectory=None, reports=None, payload=None):
    """Writes every output the scenario enables; returns the written paths."""
    written = []
    prefix = os.path.join(out_dir, scenario.scenario_id)
    if scenario.outputs.get("csv", True):
        written.append(write_report_csv(rows, f"{prefix}_report.csv"))
        if trajectory is not None:
            written.append(write_grid_csv(trajectory, f"{prefix}_grid.csv"))
        if reports:
            written.append(write_ratio_csv(reports, f"{prefix}_ratios.csv"))
    if scenario.outputs.get("json", True):
        document = {"scenario": scenario.as_dict(), "rows": [row.as_dict() for row in rows]}
        document.update(payload or {})
        if reports:
            document["reports"] = [report.as_dict() for report in reports]
        written.append(write_json(document, f"{prefix}.json"))
    for path in written:
        LOG.info(f"Wrote {path}")
    return written
