# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Serialization utils module.

Reports are dumped through :class:`ReportEncoder`, which pins the textual
representation of floats so that identical computations give byte-identical files.
"""

from __future__ import annotations

from dataclasses import asdict, is_dataclass
from enum import Enum
from json import JSONEncoder, dumps
from json import encoder as json_encoder
from typing import Any

from numpy import generic as npgeneric
from numpy import ndarray

FLOAT_DIGITS: int = 17


def format_float(value: float, digits: int = FLOAT_DIGITS) -> str:
    """Format float with a fixed number of significant digits (JSON compatible)."""
    if value != value:  # pylint: disable=comparison-with-itself
        return "NaN"
    if value in (float("inf"), float("-inf")):
        return "Infinity" if value > 0 else "-Infinity"
    text = format(value, f".{digits}g")
    if not any(char in text for char in ".en"):
        text += ".0"
    return text


class NumPyEncoder(JSONEncoder):
    """JSON encoder for NumPy arrays and scalars."""

    @classmethod
    def dumps(cls, obj: Any, indent: int | None = None) -> str:
        """Dump object to string using self as JSON encoder."""
        return dumps(obj, indent=indent, cls=cls)

    def default(self, o):
        if isinstance(o, ndarray):
            return o.tolist()
        if isinstance(o, npgeneric):
            return o.item()
        return super().default(o)


class ReportEncoder(NumPyEncoder):
    """JSON encoder for report objects with pinned float formatting.

    Enums are encoded by value, objects exposing ``to_dict`` through it, and
    remaining dataclasses field by field.
    """

    def default(self, o):
        if isinstance(o, Enum):
            return o.value
        if hasattr(o, "to_dict") and callable(o.to_dict):
            return o.to_dict()
        if is_dataclass(o) and not isinstance(o, type):
            return asdict(o)
        return super().default(o)

    def iterencode(self, o, _one_shot=False):
        markers: dict | None = {} if self.check_circular else None
        encode_string = (
            json_encoder.encode_basestring_ascii
            if self.ensure_ascii
            else json_encoder.encode_basestring
        )
        # Note: pure python path, the C encoder does not accept a custom float formatter
        _iterencode = json_encoder._make_iterencode(  # pylint: disable=protected-access
            markers,
            self.default,
            encode_string,
            self.indent,
            format_float,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )
        return _iterencode(o, 0)
