# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Parameter domains: products of intervals, some of them periodic."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np
from numpy import ndarray

from ..exceptions import DimensionError, DomainError
from ..utils.typing import as_point, as_real_array, isint, readonly

BOUNDARY_SLACK: float = 1e-12


class ParamDomain:
    """Compact parameter domain ``[lo_1, hi_1] x ... x [lo_n, hi_n]``.

    Periodic axes identify ``lo_k`` with ``hi_k``; their points are wrapped into
    ``[lo_k, hi_k)`` and distances use the shortest representative.

    Args:
        lower: lower bounds per axis.
        upper: upper bounds per axis.
        periodic: periodicity flag per axis (defaults to all false).
    """

    __slots__ = ("_lower", "_upper", "_periodic")

    def __init__(self, lower: Any, upper: Any, periodic: Sequence[bool] | None = None) -> None:
        self._set_bounds(lower, upper)
        self._set_periodic(periodic)

    def __repr__(self) -> str:
        return (
            f"ParamDomain(lower={self.lower.tolist()}, upper={self.upper.tolist()}, "
            f"periodic={self.periodic.tolist()})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParamDomain):
            return False
        return (
            np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
            and np.array_equal(self.periodic, other.periodic)
        )

    def __hash__(self) -> int:
        return hash((self.lower.tobytes(), self.upper.tobytes(), self.periodic.tobytes()))

    ################################################################################
    ## PROPERTIES
    ################################################################################
    @property
    def lower(self) -> ndarray:
        """Lower bounds."""
        return self._lower

    @property
    def upper(self) -> ndarray:
        """Upper bounds."""
        return self._upper

    @property
    def periodic(self) -> ndarray:
        """Periodicity flags."""
        return self._periodic

    @property
    def dim(self) -> int:
        """Number of axes ``n``."""
        return self._lower.size

    @property
    def lengths(self) -> ndarray:
        """Interval lengths ``hi_k - lo_k``."""
        return self._upper - self._lower

    @property
    def diameter(self) -> float:
        """Largest possible separation between two points of the domain."""
        half = np.where(self._periodic, self.lengths / 2, self.lengths)
        return float(np.linalg.norm(half))

    def _set_bounds(self, lower: Any, upper: Any) -> None:
        lower = as_real_array(lower, name="lower bounds").reshape(-1)
        upper = as_real_array(upper, name="upper bounds").reshape(-1)
        if lower.size == 0:
            raise DimensionError("Parameter domain must have at least one axis.")
        if lower.shape != upper.shape:
            raise DimensionError(
                f"Lower and upper bounds differ in size ({lower.size} != {upper.size})."
            )
        bad = np.flatnonzero(lower >= upper)
        if bad.size:
            k = int(bad[0])
            raise ValueError(
                f"Invalid interval on axis {k + 1}: [{lower[k]}, {upper[k]}], expected lo < hi."
            )
        self._lower: ndarray = readonly(lower)
        self._upper: ndarray = readonly(upper)

    def _set_periodic(self, periodic: Sequence[bool] | None) -> None:
        if periodic is None:
            periodic = [False] * self.dim
        periodic = list(periodic)
        if len(periodic) != self.dim:
            raise DimensionError(
                f"Expected {self.dim} periodicity flags, received {len(periodic)}."
            )
        if not all(isinstance(flag, (bool, np.bool_)) for flag in periodic):
            raise TypeError("Periodicity flags must be booleans.")
        self._periodic: ndarray = readonly(np.array(periodic, dtype=bool))

    ################################################################################
    ## API
    ################################################################################
    def wrap(self, q: Any) -> ndarray:
        """Map periodic coordinates into ``[lo, hi)``, leaving box coordinates untouched."""
        q = as_point(q, self.dim, name="parameter point")
        wrapped = self._lower + np.mod(q - self._lower, self.lengths)
        return np.where(self._periodic, wrapped, q)

    def validate(self, q: Any) -> ndarray:
        """Wrap ``q`` and check box coordinates lie inside their intervals.

        Raises:
            DomainError: if a non-periodic coordinate is out of range.
        """
        q = self.wrap(q)
        slack = BOUNDARY_SLACK * self.lengths
        outside = ~self._periodic & ((q < self._lower - slack) | (q > self._upper + slack))
        if outside.any():
            k = int(np.argwhere(outside)[0][-1])
            raise DomainError(
                f"Parameter coordinate {k + 1} out of range [{self._lower[k]}, {self._upper[k]}]."
            )
        return np.clip(q, self._lower, self._upper)

    def clip(self, q: Any) -> ndarray:
        """Wrap periodic coordinates and clip box coordinates into range."""
        return np.clip(self.wrap(q), self._lower, self._upper)

    def difference(self, q: Any, q_prime: Any) -> ndarray:
        """Shortest coordinate difference ``q - q'`` respecting periodicity."""
        delta = as_point(q, self.dim) - as_point(q_prime, self.dim)
        shortest = delta - self.lengths * np.round(delta / self.lengths)
        return np.where(self._periodic, shortest, delta)

    def separation(self, q: Any, q_prime: Any) -> Any:
        """Euclidean distance using the shortest representative on periodic axes."""
        distance = np.linalg.norm(self.difference(q, q_prime), axis=-1)
        return float(distance) if distance.ndim == 0 else distance

    def axes(self, resolution: int | Sequence[int]) -> list[ndarray]:
        """Uniform samples per axis (periodic axes exclude the upper endpoint)."""
        resolution = self.resolution(resolution)
        return [
            np.linspace(lo, hi, num, endpoint=not periodic)
            for lo, hi, num, periodic in zip(self._lower, self._upper, resolution, self._periodic)
        ]

    def grid(self, resolution: int | Sequence[int]) -> ndarray:
        """Tensor grid of shape ``(N, n)`` in lexicographic order."""
        mesh = np.meshgrid(*self.axes(resolution), indexing="ij")
        return np.stack([axis.reshape(-1) for axis in mesh], axis=-1)

    def spacing(self, resolution: int | Sequence[int]) -> ndarray:
        """Grid spacing per axis."""
        resolution = np.array(self.resolution(resolution), dtype=float)
        return np.where(self._periodic, self.lengths / resolution, self.lengths / (resolution - 1))

    def resolution(self, resolution: int | Sequence[int]) -> tuple[int, ...]:
        """Normalize resolution into one integer per axis (at least two)."""
        if isint(resolution):
            resolution = (resolution,) * self.dim
        resolution = tuple(resolution)
        if len(resolution) != self.dim:
            raise DimensionError(
                f"Expected {self.dim} grid resolutions, received {len(resolution)}."
            )
        for num in resolution:
            if not isint(num):
                raise TypeError(f"Grid resolution must be an integer, received {num!r}.")
            if num < 2:
                raise ValueError(f"Grid resolution must be at least 2, received {num}.")
        return tuple(int(num) for num in resolution)

    def sample(self, rng: np.random.Generator, size: int | None = None) -> ndarray:
        """Uniform random parameter points."""
        shape = (self.dim,) if size is None else (size, self.dim)
        return rng.uniform(self._lower, self._upper, size=shape)

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible description."""
        return {
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
            "periodic": self.periodic.tolist(),
        }
