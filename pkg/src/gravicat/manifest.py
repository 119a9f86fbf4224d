"""Manifest files: declared boundary components, named lattices and cobordisms.

Structure is checked with a JSON schema; names, boundary labels and lattice
references are then cross-checked by hand and every record goes through
:func:`~gravicat.cobordism.validate_cobordism`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import jsonschema

from .cobordism import BoundaryComponent, CobordismRecord, Kind, relabel, reorder, validate_cobordism
from .errors import (
    GravicatError,
    ManifestIOError,
    ManifestValidationError,
    RankLimitExceeded,
    SchemaError,
)
from .lattice import Lattice, builtin

DEFAULT_MAX_RANK = 64

_KINDS = [k.value for k in Kind]
_GRAM = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_LATTICE_INLINE = {
    "type": "object",
    "properties": {"label": {"type": ["string", "null"]}, "gram": _GRAM},
    "required": ["gram"],
    "additionalProperties": False,
}
_BOUNDARY_ITEM = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "object",
            "properties": {"label": {"type": "string"}, "kind": {"enum": _KINDS}},
            "required": ["label"],
            "additionalProperties": False,
        },
    ]
}
_NONNEG = {"type": "integer", "minimum": 0}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "objects": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"label": {"type": "string"}, "kind": {"enum": _KINDS}},
                "required": ["label", "kind"],
                "additionalProperties": False,
            },
        },
        "lattices": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "gram": _GRAM,
                    "builtin": {"type": "string"},
                    "label": {"type": "string"},
                },
                "required": ["name"],
                "oneOf": [{"required": ["gram"]}, {"required": ["builtin"]}],
                "additionalProperties": False,
            },
        },
        "cobordisms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "dim": {"enum": [2, 4]},
                    "in": {"type": "array", "items": _BOUNDARY_ITEM},
                    "out": {"type": "array", "items": _BOUNDARY_ITEM},
                    "chi": {"type": "integer"},
                    "sigma": {"type": "integer"},
                    "lattice": {"oneOf": [{"type": "string"}, _LATTICE_INLINE]},
                    "spin": {"type": "boolean"},
                    "c1": {"type": ["array", "null"], "items": {"type": "integer"}},
                    "smooth": {"type": "boolean"},
                    "b1": {"oneOf": [_NONNEG, {"type": "null"}]},
                    "genus": _NONNEG,
                    "pieces": {"oneOf": [_NONNEG, {"type": "null"}]},
                    "relabel": {
                        "type": "object",
                        "properties": {
                            "in": {"type": "object", "additionalProperties": {"type": "string"}},
                            "out": {"type": "object", "additionalProperties": {"type": "string"}},
                        },
                        "additionalProperties": False,
                    },
                    "reorder": {
                        "type": "object",
                        "properties": {
                            "in": {"type": "array", "items": {"type": "string"}},
                            "out": {"type": "array", "items": {"type": "string"}},
                        },
                        "additionalProperties": False,
                    },
                },
                "required": ["name", "dim", "chi"],
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


def max_rank() -> int:
    try:
        return int(os.environ.get("GRAVICAT_MAX_RANK", DEFAULT_MAX_RANK))
    except ValueError:
        return DEFAULT_MAX_RANK


def check_rank(lat: Lattice, limit: int | None = None) -> Lattice:
    limit = max_rank() if limit is None else limit
    if lat.rank > limit:
        raise RankLimitExceeded(f"lattice rank {lat.rank} exceeds the limit {limit}")
    return lat


@dataclass
class Manifest:
    objects: dict[str, Kind] = field(default_factory=dict)
    lattices: dict[str, Lattice] = field(default_factory=dict)
    cobordisms: dict[str, CobordismRecord] = field(default_factory=dict)


def _path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def _schema_error(path: str, message: str) -> SchemaError:
    return SchemaError(f"{path}: {message}", path=path)


def resolve_lattice(ref: str, lattices: dict[str, Lattice]) -> Lattice:
    """``builtin:NAME`` or the name of a manifest lattice."""
    if ref.startswith("builtin:"):
        return builtin(ref[len("builtin:"):])
    if ref in lattices:
        return lattices[ref]
    raise KeyError(ref)


def parse_manifest(data: Any, limit: int | None = None) -> Manifest:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        raise _schema_error(_path(err.absolute_path), err.message)

    man = Manifest()
    for i, obj in enumerate(data.get("objects", [])):
        if obj["label"] in man.objects:
            raise _schema_error(f"objects[{i}].label", f"duplicate label {obj['label']!r}")
        man.objects[obj["label"]] = Kind(obj["kind"])

    for i, entry in enumerate(data.get("lattices", [])):
        where = f"lattices[{i}]"
        if entry["name"] in man.lattices:
            raise _schema_error(f"{where}.name", f"duplicate lattice {entry['name']!r}")
        try:
            if "builtin" in entry:
                lat = builtin(entry["builtin"])
            else:
                lat = Lattice(entry["gram"], entry.get("label", entry["name"]))
        except GravicatError as exc:
            raise _schema_error(where, exc.message) from None
        man.lattices[entry["name"]] = check_rank(lat, limit)

    for i, entry in enumerate(data.get("cobordisms", [])):
        where = f"cobordisms[{i}]"
        name = entry["name"]
        if name in man.cobordisms:
            raise _schema_error(f"{where}.name", f"duplicate cobordism {name!r}")
        man.cobordisms[name] = _build_record(entry, where, man, limit)

    violations = {}
    for name, rec in man.cobordisms.items():
        found = validate_cobordism(rec)
        if found:
            violations[name] = [str(v) for v in found]
    if violations:
        raise ManifestValidationError(violations)
    return man


def _boundary(items, where: str, man: Manifest) -> tuple[BoundaryComponent, ...]:
    out = []
    for j, item in enumerate(items):
        label = item if isinstance(item, str) else item["label"]
        if label not in man.objects:
            raise _schema_error(f"{where}[{j}]", f"undeclared boundary component {label!r}")
        kind = man.objects[label]
        if isinstance(item, dict) and "kind" in item and Kind(item["kind"]) is not kind:
            raise _schema_error(f"{where}[{j}].kind", f"{label!r} is declared as {kind.value}")
        out.append(BoundaryComponent(label, kind))
    return tuple(out)


def _build_record(entry: dict, where: str, man: Manifest, limit: int | None) -> CobordismRecord:
    lat_ref = entry.get("lattice")
    lattice = None
    if isinstance(lat_ref, str):
        try:
            lattice = resolve_lattice(lat_ref, man.lattices)
        except KeyError:
            raise _schema_error(f"{where}.lattice", f"unknown lattice {lat_ref!r}") from None
        except GravicatError as exc:
            raise _schema_error(f"{where}.lattice", exc.message) from None
    elif isinstance(lat_ref, dict):
        try:
            lattice = Lattice.from_json(lat_ref)
        except GravicatError as exc:
            raise _schema_error(f"{where}.lattice", exc.message) from None
    if lattice is not None:
        check_rank(lattice, limit)

    fields = {k: v for k, v in entry.items() if k not in ("in", "out", "lattice")}
    rec = replace(
        CobordismRecord.from_json(fields, lattice=lattice),
        incoming=_boundary(entry.get("in", []), f"{where}.in", man),
        outgoing=_boundary(entry.get("out", []), f"{where}.out", man),
    )

    if "relabel" in entry:
        try:
            rec = relabel(rec, entry["relabel"].get("in"), entry["relabel"].get("out"))
        except GravicatError as exc:
            raise _schema_error(f"{where}.relabel", exc.message) from None
        for side, comps in (("in", rec.incoming), ("out", rec.outgoing)):
            for c in comps:
                if c.label not in man.objects:
                    raise _schema_error(f"{where}.relabel.{side}", f"undeclared boundary component {c.label!r}")
                if man.objects[c.label] is not c.kind:
                    raise _schema_error(f"{where}.relabel.{side}", f"{c.label!r} is declared as {man.objects[c.label].value}")
    if "reorder" in entry:
        try:
            rec = reorder(rec, entry["reorder"].get("in"), entry["reorder"].get("out"))
        except GravicatError as exc:
            raise _schema_error(f"{where}.reorder", exc.message) from None
    return rec


def load_manifest(path: str | os.PathLike, limit: int | None = None) -> Manifest:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ManifestIOError(f"cannot read {path}: {exc.strerror}", path=str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", path="<root>") from None
    return parse_manifest(data, limit)
