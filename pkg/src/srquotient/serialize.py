"""JSON schemas and (de)serialization helpers shared by the CLI."""
from __future__ import annotations

import jsonschema

from .polys import Polynomial1, Polynomial2

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_ID_LIST = {"type": "array", "items": {"type": "string"}}
_PERM = {"type": "object", "additionalProperties": {"type": "string"}}

ARRANGEMENT_SCHEMA = {
    "type": "object",
    "required": ["d", "matrix"],
    "properties": {
        "d": {"type": "integer", "minimum": 0},
        "p": {"type": "integer", "minimum": 0},
        "q": {"type": "integer", "minimum": 0},
        "matrix": _INT_MATRIX,
    },
}

POSET_SCHEMA = {
    "type": "object",
    "required": ["elements", "covers"],
    "properties": {
        "elements": _ID_LIST,
        "covers": {"type": "array", "items": {"type": "array", "items": {"type": "string"},
                                              "minItems": 2, "maxItems": 2}},
    },
}

COMPLEX_SCHEMA = {
    "type": "object",
    "required": ["facets"],
    "properties": {
        "vertices": _ID_LIST,
        "facets": {"type": "array", "items": _ID_LIST},
    },
}

ACTION_SCHEMA = {
    "type": "object",
    "required": ["poset", "generators"],
    "properties": {
        "poset": POSET_SCHEMA,
        "generators": {"type": "array", "items": _PERM},
    },
}

COMPLEX_ACTION_SCHEMA = {
    "type": "object",
    "required": ["facets", "generators"],
    "properties": {
        "vertices": _ID_LIST,
        "facets": {"type": "array", "items": _ID_LIST},
        "generators": {"type": "array", "items": _PERM},
        "decomposition": {"type": "array", "items": {"type": "array", "items": _PERM}},
        "facet": _ID_LIST,
    },
}

SCHEMAS = {
    "arrangement": ARRANGEMENT_SCHEMA,
    "poset": POSET_SCHEMA,
    "complex": COMPLEX_SCHEMA,
    "action": ACTION_SCHEMA,
    "complex_action": COMPLEX_ACTION_SCHEMA,
}


def detect_kind(data) -> str:
    """Guess the input kind from its top-level keys."""
    if not isinstance(data, dict):
        raise jsonschema.ValidationError("top-level JSON value must be an object")
    if "matrix" in data:
        return "arrangement"
    if "poset" in data:
        return "action"
    if "generators" in data and "facets" in data:
        return "complex_action"
    if "elements" in data:
        return "poset"
    if "facets" in data:
        return "complex"
    raise jsonschema.ValidationError("cannot tell which kind of object this JSON describes")


def validate(data, kind: str):
    jsonschema.validate(data, SCHEMAS[kind])


def poly1_to_json(p: Polynomial1, var: str = "t") -> dict:
    return {"vars": [var], "coefficients": p.to_list(), "pretty": repr(p).replace("t", var)}


def poly2_to_json(T: Polynomial2) -> dict:
    return {"vars": ["x", "y"],
            "terms": [{"exp": [i, j], "coef": c} for (i, j), c in sorted(T.terms.items())],
            "pretty": repr(T)}


def poly2_from_json(data: dict) -> Polynomial2:
    return Polynomial2({tuple(t["exp"]): t["coef"] for t in data["terms"]})
