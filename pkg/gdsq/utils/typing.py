# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Type checking and array coercion utils module."""

from __future__ import annotations

from numbers import Integral, Real
from typing import Any

from numpy import asarray, isfinite, ndarray

from ..exceptions import DimensionError


################################################################################
## TYPE CHECKING
################################################################################
def isint(obj: Any) -> bool:
    """Check if object is an integer, booleans excluded."""
    return isinstance(obj, Integral) and not isinstance(obj, bool)


def isreal(obj: Any) -> bool:
    """Check if object is a finite real number, booleans excluded."""
    if isinstance(obj, bool) or not isinstance(obj, Real):
        return False
    return bool(isfinite(float(obj)))


################################################################################
## COERCION
################################################################################
def as_real_array(obj: Any, name: str = "array", ndim: int | None = None) -> ndarray:
    """Coerce array-like input into a finite float64 array.

    Args:
        obj: array-like input.
        name: name to use in error messages.
        ndim: required number of dimensions, if any.

    Returns:
        A new float64 array.

    Raises:
        TypeError: if the input is not numeric or is ragged.
        DimensionError: if the number of dimensions does not match ``ndim``.
        ValueError: if any entry is not finite.
    """
    try:
        arr = asarray(obj, dtype=float)
    except (TypeError, ValueError) as error:
        raise TypeError(f"Invalid {name}, expected array of real numbers: {obj!r}") from error
    if ndim is not None and arr.ndim != ndim:
        raise DimensionError(f"Invalid {name}, expected {ndim} dimensions, got {arr.ndim}.")
    if not isfinite(arr).all():
        raise ValueError(f"Invalid {name}, entries must be finite.")
    return arr.copy()


def as_point(obj: Any, dim: int, name: str = "point") -> ndarray:
    """Coerce input into a point of dimension ``dim`` (scalars allowed for ``dim == 1``).

    Leading batch axes are preserved: the last axis must have length ``dim``.
    """
    arr = as_real_array(obj, name=name)
    if arr.ndim == 0 and dim == 1:
        arr = arr.reshape(1)
    if arr.ndim == 0 or arr.shape[-1] != dim:
        raise DimensionError(
            f"Invalid {name}, expected dimension {dim}, got shape {arr.shape}."
        )
    return arr


def readonly(arr: ndarray) -> ndarray:
    """Flag array as non-writeable and return it."""
    arr.flags.writeable = False
    return arr
