"""JSON input parsing and exact JSON serialization of results."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import jsonschema

from . import presets
from .cone import Cone, from_support_forms, support_forms
from .divisors import ClassLabel

INPUT_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "generators": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
        "support_forms": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
        "preset": {"type": "string"},
    },
    "additionalProperties": False,
}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class MonoidInput:
    name: str
    dim: int
    generators: tuple[tuple[int, ...], ...] | None = None
    support_forms: tuple[tuple[int, ...], ...] | None = None
    preset: str | None = None

    def build(self) -> Cone:
        if self.preset is not None:
            cone = presets.preset(self.preset)
        elif self.generators is not None:
            cone = support_forms(self.generators, self.dim)
        else:
            cone = from_support_forms(self.support_forms, self.dim)
        if self.name and not cone.name:
            object.__setattr__(cone, "name", self.name)
        return cone


def parse_input(document: str | dict) -> MonoidInput:
    """Validate a JSON document (text or already decoded) describing a monoid."""
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    else:
        data = document
    try:
        jsonschema.validate(data, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {exc.message}") from None

    name = data.get("name", "")
    if "preset" in data:
        if "generators" in data or "support_forms" in data:
            raise InputError("give either a preset or explicit vectors, not both")
        cone = presets.preset(data["preset"])
        return MonoidInput(name or data["preset"], cone.dim, preset=data["preset"])
    has_g, has_f = "generators" in data, "support_forms" in data
    if has_g == has_f:
        raise InputError("exactly one of 'generators' or 'support_forms' is required")
    if "dim" not in data:
        raise InputError("field 'dim' is required")
    d = data["dim"]
    key = "generators" if has_g else "support_forms"
    vecs = data[key]
    for i, v in enumerate(vecs):
        if len(v) != d:
            raise InputError(f"{key}/{i}: length {len(v)} does not match dim {d}")
    if len(vecs) < d:
        raise InputError(f"{key}: need at least dim={d} vectors, got {len(vecs)}")
    vecs = tuple(tuple(v) for v in vecs)
    if has_g:
        return MonoidInput(name, d, generators=vecs)
    return MonoidInput(name, d, support_forms=vecs)


def load_cone(source: str) -> Cone:
    """A preset name, a path to a JSON file, or inline JSON text."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_input(fh.read()).build()
    if source.lstrip().startswith("{"):
        return parse_input(source).build()
    try:
        return presets.preset(source)
    except ValueError:
        raise InputError(f"{source!r} is neither a file, JSON text nor a known preset") from None


def rational(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def label_json(label: ClassLabel) -> dict:
    return label.as_dict()


def label_from_json(data: dict) -> ClassLabel:
    return ClassLabel(tuple(data["torsion"]), tuple(data["free"]))


def to_json(obj: Any) -> Any:
    """Recursively replace Fractions by "p/q" strings and tuples by lists."""
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, ClassLabel):
        return label_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(to_json(obj), sort_keys=False)
