"""Roster document parsing (JSON, UTF-8).

Schema::

    {"runners": [
        {"team": "A", "id": "a1", "model": {"kind": "uniform", "lower": 540, "upper": 600}},
        {"team": "B", "id": "b1", "model": {"kind": "beta", "alpha": 1.5, "beta": 3,
                                            "shift": 540, "scale": 90}},
        {"team": "B", "id": "b2", "model": {"kind": "point", "time": 571.5}}
    ]}

Unknown fields anywhere in the document are rejected, naming the field.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .racesim import BetaTime, PointTime, Roster, Runner, TimeModel, UniformTime

_MODEL_FIELDS = {
    "uniform": ("lower", "upper"),
    "beta": ("alpha", "beta", "shift", "scale"),
    "point": ("time",),
}


def _require_fields(obj: dict, allowed: tuple[str, ...], where: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise InputError(f"unknown field {unknown[0]!r} in {where}")
    missing = sorted(set(allowed) - set(obj))
    if missing:
        raise InputError(f"missing field {missing[0]!r} in {where}")


def _parse_model(obj, where: str) -> TimeModel:
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be an object")
    kind = obj.get("kind")
    if kind not in _MODEL_FIELDS:
        raise InputError(
            f"{where} has unknown kind {kind!r}; expected one of "
            f"{sorted(_MODEL_FIELDS)}"
        )
    fields = _MODEL_FIELDS[kind]
    _require_fields(obj, ("kind",) + fields, where)
    values = {}
    for name in fields:
        value = obj[name]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InputError(f"field {name!r} in {where} must be a number")
        values[name] = float(value)
    if kind == "uniform":
        return UniformTime(values["lower"], values["upper"])
    if kind == "beta":
        return BetaTime(values["alpha"], values["beta"], values["shift"], values["scale"])
    return PointTime(values["time"])


def roster_from_dict(doc) -> Roster:
    """Validate a parsed roster document and build the Roster."""
    if not isinstance(doc, dict):
        raise InputError("roster document must be a JSON object")
    _require_fields(doc, ("runners",), "roster document")
    entries = doc["runners"]
    if not isinstance(entries, list) or not entries:
        raise InputError("'runners' must be a nonempty array")
    runners = []
    for k, entry in enumerate(entries):
        where = f"runners[{k}]"
        if not isinstance(entry, dict):
            raise InputError(f"{where} must be an object")
        _require_fields(entry, ("team", "id", "model"), where)
        team = entry["team"]
        runner_id = entry["id"]
        if not isinstance(runner_id, str) or not runner_id:
            raise InputError(f"field 'id' in {where} must be a nonempty string")
        runners.append(Runner(team, runner_id, _parse_model(entry["model"], f"{where}.model")))
    return Roster(tuple(runners))


def load_roster(path: str | Path) -> Roster:
    """Read and validate a roster JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read roster file {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"roster file {path} is not valid JSON: {exc}") from exc
    return roster_from_dict(doc)
