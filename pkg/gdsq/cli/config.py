# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Experiment configuration: JSON schema, validation and loading."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match

from ..composition.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..exceptions import ConfigError
from ..manifolds import MANIFOLD_LIBRARY
from ..maps import MAP_KIND_LIBRARY

THEOREMS: tuple[str, ...] = ("immersion", "injectivity")

_NUMBER = {"type": "number"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

CONFIG_SCHEMA: dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "gdsq experiment configuration",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "map": {"$ref": "#/definitions/map"},
        "manifold": {"$ref": "#/definitions/manifold"},
        "seed": {"type": "integer"},
        "m": {"type": "integer", "minimum": 1},
        "theorem": {"enum": list(THEOREMS)},
        "trials": {"type": "integer", "minimum": 1},
        "distribution": {"$ref": "#/definitions/distribution"},
        "override_hypothesis": {"type": "boolean"},
        "grid": {
            "oneOf": [
                {"type": "integer", "minimum": 2},
                {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
            ]
        },
        "refine": {"type": "integer", "minimum": 0},
        "delta": _POSITIVE,
        "starts": {"type": "integer", "minimum": 1},
        "attempts": {"type": "integer", "minimum": 1},
        "window": {
            "type": "array",
            "items": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2},
            "minItems": 2,
            "maxItems": 2,
        },
        "step": _POSITIVE,
        "point": {"$ref": "#/definitions/vector"},
        "params": {"type": "array", "items": {"$ref": "#/definitions/vector"}, "minItems": 1},
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {name: _POSITIVE for name in DEFAULT_TOLERANCES.to_dict()},
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {name: {"type": "string"} for name in ("report", "csv", "svg")},
        },
    },
    "definitions": {
        "vector": {"type": "array", "items": _NUMBER, "minItems": 1},
        "matrix": {"type": "array", "items": {"$ref": "#/definitions/vector"}, "minItems": 1},
        "distribution": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["kind"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "gaussian"},
                        "mean": _NUMBER,
                        "std": _POSITIVE,
                    },
                },
                {
                    "type": "object",
                    "required": ["kind"],
                    "additionalProperties": False,
                    "properties": {"kind": {"const": "uniform"}, "low": _NUMBER, "high": _NUMBER},
                },
            ]
        },
        "map": {
            "type": "object",
            "required": ["p"],
            "additionalProperties": False,
            "properties": {
                "A": {"$ref": "#/definitions/matrix"},
                "kind": {"enum": sorted(MAP_KIND_LIBRARY)},
                "p": {
                    "oneOf": [
                        {"$ref": "#/definitions/matrix"},
                        {
                            "type": "object",
                            "required": ["distribution"],
                            "additionalProperties": False,
                            "properties": {"distribution": {"$ref": "#/definitions/distribution"}},
                        },
                    ]
                },
            },
            "oneOf": [{"required": ["A"]}, {"required": ["kind"]}],
        },
        "manifold": {
            "oneOf": [
                {"enum": sorted(MANIFOLD_LIBRARY)},
                {
                    "type": "object",
                    "required": ["kind"],
                    "properties": {"kind": {"enum": [*sorted(MANIFOLD_LIBRARY), "expr"]}},
                },
            ]
        },
    },
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "gdsq report",
    "type": "object",
    "required": ["command", "version", "seed", "status", "result"],
    "properties": {
        "command": {"type": "string"},
        "version": {"type": "string"},
        "seed": {"type": "integer"},
        "status": {"enum": [0, 2, 3]},
        "result": {"type": "object"},
    },
}


################################################################################
## EXPERIMENT CONFIG
################################################################################
@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment configuration.

    Fields mirror the keys of :data:`CONFIG_SCHEMA`; ``output`` is split into
    ``report``, ``csv`` and ``svg`` paths. Unset options are ``None`` and resolved by
    each command.
    """

    # pylint: disable=too-many-instance-attributes
    map: Mapping[str, Any] | None = None
    manifold: Mapping[str, Any] | str | None = None
    seed: int = 0
    m: int | None = None
    theorem: str | None = None
    trials: int | None = None
    distribution: Mapping[str, Any] | None = None
    override_hypothesis: bool = False
    grid: int | list[int] | None = None
    refine: int | None = None
    delta: float | None = None
    starts: int | None = None
    attempts: int | None = None
    window: list[list[float]] | None = None
    step: float | None = None
    point: list[float] | None = None
    params: list[list[float]] | None = None
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES)
    report: str | None = None
    csv: str | None = None
    svg: str | None = None

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> ExperimentConfig:
        """Validate against :data:`CONFIG_SCHEMA` and build.

        Raises:
            ConfigError: with the path of the offending field.
        """
        validate_document(data, CONFIG_SCHEMA)
        options = {key: value for key, value in data.items() if key not in ("tolerances", "output")}
        options.update(data.get("output", {}))
        try:
            options["tolerances"] = DEFAULT_TOLERANCES.replicate(**data.get("tolerances", {}))
        except (TypeError, ValueError) as error:
            raise ConfigError(str(error), "tolerances") from error
        return cls(**options)

    def replicate(self, **overrides: Any) -> ExperimentConfig:
        """Copy with the given fields replaced (``None`` values are ignored)."""
        names = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - names)
        if unknown:
            raise ConfigError(f"Unknown configuration fields {unknown}.")
        return replace(self, **{key: val for key, val in overrides.items() if val is not None})


def load_config(source: str | Path | Mapping[str, Any] | None = None) -> ExperimentConfig:
    """Load an experiment configuration from a JSON file, a mapping, or defaults.

    Raises:
        ConfigError: if the file cannot be read or parsed, or violates the schema.
    """
    if source is None:
        return ExperimentConfig.from_dict({})
    if isinstance(source, Mapping):
        return ExperimentConfig.from_dict(source)
    try:
        with open(source, encoding="utf8") as fp:  # pylint: disable=invalid-name
            data = json.load(fp)
    except OSError as error:
        message = f"Cannot read configuration file ({error.strerror})."
        raise ConfigError(message, str(source)) from error
    except json.JSONDecodeError as error:
        message = f"Invalid JSON at line {error.lineno}: {error.msg}."
        raise ConfigError(message, str(source)) from error
    return ExperimentConfig.from_dict(data)


def validate_document(document: Any, schema: Mapping[str, Any]) -> None:
    """Validate a JSON document, raising :class:`ConfigError` on the most relevant error."""
    error = best_match(Draft7Validator(schema).iter_errors(document))
    if error is not None:
        raise ConfigError(error.message, json_path(error.absolute_path))


def json_path(parts: Iterable[Any]) -> str:
    """Format a sequence of keys and indices as ``map.A[1][0]`` (``$`` for the root)."""
    path = ""
    for part in parts:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path or "$"
