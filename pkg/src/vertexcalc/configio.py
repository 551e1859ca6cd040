"""Config-file and report serialization.

Structure configs:  {"name", "basis": [...], "modes": [{"u", "n", "v",
"coeff": {basis: "p/q"}}...], "vacuum": name-or-null, "tags": [...]}.
Module configs extend this with {"wbasis", "wmodes": [{"u", "n", "w",
"coeff"}...], "over": "structure-name"}; the base structure is resolved as
"<over>.json" next to the module file.

Machine reports are canonical JSON (sorted keys, fixed separators, no
timestamps or durations) so identical config + seed gives identical bytes.
"""
from __future__ import annotations

import json
import os

from .errors import ConfigError
from .modules import ModuleStructure
from .scalars import Vec, format_scalar, parse_scalar
from .structures import VertexStructure


def _coeff_to_json(vec: Vec):
    return {k: format_scalar(v) for k, v in sorted(vec.entries.items())}


def _coeff_from_json(data) -> Vec:
    return Vec({k: parse_scalar(v) for k, v in data.items()})


def structure_to_config(S: VertexStructure) -> dict:
    modes = []
    for (u, v) in sorted(S.ytable):
        for n in sorted(S.ytable[(u, v)]):
            modes.append({"u": u, "n": n, "v": v,
                          "coeff": _coeff_to_json(S.ytable[(u, v)][n])})
    return {"name": S.name, "basis": list(S.basis), "modes": modes,
            "vacuum": S.vacuum, "tags": list(S.tags)}


def structure_from_config(data: dict) -> VertexStructure:
    try:
        basis = tuple(data["basis"])
        table = {}
        for rec in data["modes"]:
            table.setdefault((rec["u"], rec["v"]), {})[int(rec["n"])] = \
                _coeff_from_json(rec["coeff"])
        return VertexStructure(data["name"], basis, table,
                               vacuum=data.get("vacuum"),
                               tags=tuple(data.get("tags", ())))
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"bad structure config: {err}") from err


def module_to_config(M: ModuleStructure) -> dict:
    wmodes = []
    for (u, w) in sorted(M.ywtable):
        for n in sorted(M.ywtable[(u, w)]):
            wmodes.append({"u": u, "n": n, "w": w,
                           "coeff": _coeff_to_json(M.ywtable[(u, w)][n])})
    return {"name": M.name, "over": M.over.name,
            "wbasis": list(M.wbasis), "wmodes": wmodes,
            "tags": list(M.tags)}


def module_from_config(data: dict, over: VertexStructure) -> ModuleStructure:
    try:
        if data["over"] != over.name:
            raise ConfigError(
                f"module expects base {data['over']!r}, got {over.name!r}")
        table = {}
        for rec in data["wmodes"]:
            table.setdefault((rec["u"], rec["w"]), {})[int(rec["n"])] = \
                _coeff_from_json(rec["coeff"])
        return ModuleStructure(data["name"], over, tuple(data["wbasis"]),
                               table, tags=tuple(data.get("tags", ())))
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"bad module config: {err}") from err


def dump_json(data, path):
    with open(path, "w") as fh:
        fh.write(canonical_json(data))
        fh.write("\n")


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"cannot read {path}: {err}") from err


def load_structure(path) -> VertexStructure:
    return structure_from_config(load_json(path))


def load_module(path) -> ModuleStructure:
    data = load_json(path)
    if "over" not in data:
        raise ConfigError(f"{path} is not a module config")
    base_path = os.path.join(os.path.dirname(path) or ".", f"{data['over']}.json")
    if not os.path.exists(base_path):
        raise ConfigError(f"base structure file {base_path} not found")
    return module_from_config(data, load_structure(base_path))


def is_module_config(data) -> bool:
    return "wmodes" in data


def machine_report(command, seed, params, records) -> str:
    """Canonical machine-readable report; byte-identical for equal inputs."""
    return canonical_json({
        "command": command,
        "seed": seed,
        "params": params,
        "records": records,
    }) + "\n"


def text_report(command, seed, params, records, durations=None) -> str:
    lines = [f"# {command} (seed={seed}, params={params})"]
    for rec in records:
        wit = f"  witness={rec['witness']}" if rec.get("witness") else ""
        lines.append(f"{rec['verdict']:<8} {rec['id']}  [{rec['anchor']}]{wit}")
    if durations is not None:
        lines.append(f"# wall-clock: {durations:.3f}s")
    counts = {}
    for rec in records:
        counts[rec["verdict"]] = counts.get(rec["verdict"], 0) + 1
    lines.append("# " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    return "\n".join(lines) + "\n"
