"""JSON complex files and report serialization.

A complex file looks like ``{"m": 4, "facets": [[1, 3], [2, 4]]}``; vertices
are 1-based. ``"void": true`` with an empty facet list encodes the void
complex, while ``"facets": [[]]`` is the complex ``{∅}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .complex import MAX_VERTICES, SimplicialComplex, from_facets

SCHEMA_VERSION = 1

COMPLEX_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "m": {"type": "integer", "minimum": 1, "maximum": MAX_VERTICES},
        "facets": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "uniqueItems": True},
        },
        "void": {"type": "boolean"},
    },
    "required": ["m", "facets"],
    "additionalProperties": False,
}

REPORT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
    },
    "required": ["schema_version", "command"],
}


class ComplexFormatError(ValueError):
    """A complex file is not valid JSON or does not match the schema."""


def complex_from_json(data: Any) -> SimplicialComplex:
    try:
        jsonschema.validate(data, COMPLEX_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ComplexFormatError(f"invalid complex: {exc.message}") from None
    void = data.get("void", False)
    if void and data["facets"]:
        raise ComplexFormatError("invalid complex: a void complex has no facets")
    if not void and not data["facets"]:
        raise ComplexFormatError('invalid complex: empty facet list needs "void": true')
    m = data["m"]
    for f in data["facets"]:
        for v in f:
            if not 1 <= v <= m:
                raise ComplexFormatError(f"vertex {v} out of range 1..{m}")
    return from_facets(m, data["facets"], void=void)


def complex_to_json(K: SimplicialComplex) -> dict[str, Any]:
    out: dict[str, Any] = {"m": K.m, "facets": K.facet_lists()}
    if K.void:
        out["void"] = True
    return out


def load_complex(path: str | Path) -> SimplicialComplex:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexFormatError(f"malformed JSON in {path}: {exc}") from None
    return complex_from_json(data)


def dump_complex(K: SimplicialComplex, path: str | Path | None = None) -> str:
    text = json.dumps(complex_to_json(K), sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def report(command: str, **fields: Any) -> dict[str, Any]:
    out = {"schema_version": SCHEMA_VERSION, "command": command, **fields}
    jsonschema.validate(out, REPORT_SCHEMA)
    return out


def str_keys(d: dict[int, int]) -> dict[str, int]:
    """JSON object keys must be strings; keep the numeric order."""
    return {str(k): v for k, v in sorted(d.items())}
