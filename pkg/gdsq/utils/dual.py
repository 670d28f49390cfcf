# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Forward-mode automatic differentiation with (array valued) dual numbers.

A :class:`Dual` holds a value array and a tangent array of the same shape, and
propagates first order derivatives exactly (up to rounding) through arithmetic and
the elementary functions :func:`sin`, :func:`cos` and :func:`exp`. NumPy arrays on
either side of an operator defer to the dual number.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

import numpy as np
from numpy import ndarray


class Dual:
    """Dual number ``value + tangent * eps`` with ``eps**2 == 0``.

    Args:
        value: real scalar or array.
        tangent: derivative along the seeded direction, broadcast to ``value``'s shape.
            Defaults to zeros (i.e. a constant).
    """

    __slots__ = ("value", "tangent")
    __array_ufunc__ = None  # Note: makes `ndarray <op> Dual` dispatch to the reflected op

    def __init__(self, value: Any, tangent: Any = None) -> None:
        value = np.asarray(value, dtype=float)
        tangent = np.zeros_like(value) if tangent is None else np.asarray(tangent, dtype=float)
        value, tangent = np.broadcast_arrays(value, tangent)
        self.value: ndarray = value
        self.tangent: ndarray = tangent

    def __repr__(self) -> str:
        return f"Dual({self.value!r}, {self.tangent!r})"

    ################################################################################
    ## ARITHMETIC
    ################################################################################
    @staticmethod
    def lift(other: Any) -> Dual:
        """Promote constants to dual numbers."""
        return other if isinstance(other, Dual) else Dual(other)

    def __neg__(self) -> Dual:
        return Dual(-self.value, -self.tangent)

    def __pos__(self) -> Dual:
        return self

    def __add__(self, other: Any) -> Dual:
        other = self.lift(other)
        return Dual(self.value + other.value, self.tangent + other.tangent)

    def __radd__(self, other: Any) -> Dual:
        return self.__add__(other)

    def __sub__(self, other: Any) -> Dual:
        other = self.lift(other)
        return Dual(self.value - other.value, self.tangent - other.tangent)

    def __rsub__(self, other: Any) -> Dual:
        return self.lift(other).__sub__(self)

    def __mul__(self, other: Any) -> Dual:
        other = self.lift(other)
        return Dual(
            self.value * other.value,
            self.value * other.tangent + self.tangent * other.value,
        )

    def __rmul__(self, other: Any) -> Dual:
        return self.__mul__(other)

    def __truediv__(self, other: Any) -> Dual:
        other = self.lift(other)
        quotient = self.value / other.value
        return Dual(quotient, (self.tangent - quotient * other.tangent) / other.value)

    def __rtruediv__(self, other: Any) -> Dual:
        return self.lift(other).__truediv__(self)

    def __pow__(self, power: Any) -> Dual:
        if isinstance(power, Dual):
            if np.any(power.tangent != 0):
                return exp(power * log(self))
            power = power.value
        power = np.asarray(power, dtype=float)
        if np.all(power == 0):
            return Dual(np.ones_like(self.value))
        return Dual(self.value**power, power * self.value ** (power - 1) * self.tangent)

    def __rpow__(self, base: Any) -> Dual:
        return exp(self * np.log(np.asarray(base, dtype=float)))

    ################################################################################
    ## ARRAY PROTOCOL
    ################################################################################
    @property
    def shape(self) -> tuple[int, ...]:
        """Shape of the underlying arrays."""
        return self.value.shape

    def __getitem__(self, key: Any) -> Dual:
        return Dual(self.value[key], self.tangent[key])

    def __len__(self) -> int:
        return len(self.value)

    def sum(self, axis: int | None = None) -> Dual:
        """Sum over the given axis."""
        return Dual(self.value.sum(axis=axis), self.tangent.sum(axis=axis))

    @classmethod
    def stack(cls, components: list[Any], axis: int = -1) -> Dual:
        """Stack dual numbers (or constants) along a new axis."""
        duals = [cls.lift(c) for c in components]
        shape = np.broadcast_shapes(*(d.shape for d in duals))
        values = [np.broadcast_to(d.value, shape) for d in duals]
        tangents = [np.broadcast_to(d.tangent, shape) for d in duals]
        return Dual(np.stack(values, axis=axis), np.stack(tangents, axis=axis))


################################################################################
## ELEMENTARY FUNCTIONS
################################################################################
def sin(x: Any) -> Any:
    """Sine for dual numbers and arrays alike."""
    if isinstance(x, Dual):
        return Dual(np.sin(x.value), np.cos(x.value) * x.tangent)
    return np.sin(x)


def cos(x: Any) -> Any:
    """Cosine for dual numbers and arrays alike."""
    if isinstance(x, Dual):
        return Dual(np.cos(x.value), -np.sin(x.value) * x.tangent)
    return np.cos(x)


def exp(x: Any) -> Any:
    """Exponential for dual numbers and arrays alike."""
    if isinstance(x, Dual):
        value = np.exp(x.value)
        return Dual(value, value * x.tangent)
    return np.exp(x)


def log(x: Any) -> Any:
    """Natural logarithm for dual numbers and arrays alike."""
    if isinstance(x, Dual):
        return Dual(np.log(x.value), x.tangent / x.value)
    return np.log(x)


################################################################################
## DIFFERENTIATION
################################################################################
def jacobian_fwd(func: Callable[[Any], Any], x: Any) -> ndarray:
    """Jacobian of a vector function by one forward pass per input direction.

    Args:
        func: maps an array (or dual number) of shape ``(..., n)`` to shape ``(..., m)``.
        x: evaluation point(s) of shape ``(..., n)``.

    Returns:
        Array of shape ``(..., m, n)``.
    """
    x = np.asarray(x, dtype=float)
    columns = []
    for direction in np.eye(x.shape[-1]):
        seeded = Dual(x, np.broadcast_to(direction, x.shape))
        output = Dual.lift(func(seeded))
        columns.append(output.tangent)
    return np.stack(columns, axis=-1)


def stack_components(components: list[Any]) -> Any:
    """Stack scalar fields into a vector field along a new last axis.

    Dual numbers are stacked as such if any component is one; constants are broadcast.
    """
    if any(isinstance(c, Dual) for c in components):
        return Dual.stack(components, axis=-1)
    return np.stack(np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in components)), axis=-1)
