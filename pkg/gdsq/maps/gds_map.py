# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Generalized distance-squared mappings.

The map with coefficient matrix ``A`` (``ell x m``, nonzero entries) and central
points ``p = (p_1, ..., p_ell)`` in ``R^m`` sends ``x`` to the vector with components

    G_i(x) = sum_j a_ij (x_j - p_ij)^2.
"""

from __future__ import annotations

import logging
from typing import Any
from warnings import warn

import numpy as np
from numpy import ndarray

from ..exceptions import ConditioningWarning, ConstructionError, DimensionError
from ..utils.dual import jacobian_fwd
from ..utils.typing import as_point, readonly

logger = logging.getLogger(__name__)

CONDITIONING_RATIO: float = 1e-8


class GdsMap:
    """Generalized distance-squared mapping ``G_(p, A): R^m -> R^ell``.

    Instances are immutable: coefficients and centers are stored as read-only arrays.

    Args:
        coefficients: ``ell x m`` matrix with nonzero entries.
        centers: ``ell`` central points of dimension ``m``.

    Raises:
        ConstructionError: on ragged or mismatched input, or on zero coefficients.
    """

    __slots__ = ("_coefficients", "_centers")

    def __init__(self, coefficients: Any, centers: Any) -> None:
        self._set_coefficients(coefficients)
        self._set_centers(centers)

    def __repr__(self) -> str:
        return (
            f"GdsMap(coefficients={self.coefficients.tolist()}, "
            f"centers={self.centers.tolist()})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GdsMap):
            return False
        return np.array_equal(self.coefficients, other.coefficients) and np.array_equal(
            self.centers, other.centers
        )

    def __hash__(self) -> int:
        return hash((self.coefficients.tobytes(), self.centers.tobytes(), self.shape))

    ################################################################################
    ## PROPERTIES
    ################################################################################
    @property
    def coefficients(self) -> ndarray:
        """Coefficient matrix ``A`` (read-only)."""
        return self._coefficients

    @property
    def centers(self) -> ndarray:
        """Central points ``p`` as rows of an ``ell x m`` array (read-only)."""
        return self._centers

    @property
    def num_components(self) -> int:
        """Number of components ``ell``."""
        return self._coefficients.shape[0]

    @property
    def dim(self) -> int:
        """Source dimension ``m``."""
        return self._coefficients.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        """Pair ``(ell, m)``."""
        return self.num_components, self.dim

    @property
    def is_equidimensional(self) -> bool:
        """Whether ``ell == m``."""
        return self.num_components == self.dim

    def _set_coefficients(self, coefficients: Any) -> None:
        rows = _as_rows(coefficients, "coefficient matrix")
        if not rows or not rows[0]:
            raise ConstructionError("Coefficient matrix must have at least one row and column.")
        num_cols = len(rows[0])
        for i, row in enumerate(rows, start=1):
            if len(row) != num_cols:
                raise ConstructionError(
                    f"Coefficient row {i} has {len(row)} entries, expected {num_cols}.",
                    index=(i,),
                )
        matrix = np.array(rows, dtype=float)
        if not np.isfinite(matrix).all():
            raise ConstructionError("Coefficient matrix entries must be finite.")
        zeros = np.argwhere(matrix == 0)
        if zeros.size:
            i, j = (int(k) + 1 for k in zeros[0])
            raise ConstructionError(
                f"Coefficient entry ({i}, {j}) is zero, all entries must be nonzero.",
                index=(i, j),
            )
        magnitudes = np.abs(matrix)
        if magnitudes.min() < CONDITIONING_RATIO * magnitudes.max():
            warn(
                "Coefficient magnitudes span more than "
                f"{-np.log10(CONDITIONING_RATIO):.0f} orders of magnitude "
                f"(min {magnitudes.min():.3g}, max {magnitudes.max():.3g}); "
                "expect poor conditioning.",
                ConditioningWarning,
                stacklevel=3,
            )
        self._coefficients: ndarray = readonly(matrix)

    def _set_centers(self, centers: Any) -> None:
        ell, m = self._coefficients.shape
        points = _as_rows(centers, "central points")
        if len(points) != ell:
            raise ConstructionError(
                f"Expected {ell} central points (one per coefficient row), received {len(points)}.",
                index=(min(len(points), ell) + 1,),
            )
        for i, point in enumerate(points, start=1):
            if len(point) != m:
                raise ConstructionError(
                    f"Central point {i} has dimension {len(point)}, expected {m}.",
                    index=(i,),
                )
        array = np.array(points, dtype=float).reshape(ell, m)
        if not np.isfinite(array).all():
            raise ConstructionError("Central point coordinates must be finite.")
        self._centers: ndarray = readonly(array)

    ################################################################################
    ## EVALUATION
    ################################################################################
    def evaluate(self, x: Any) -> ndarray:
        """Evaluate the map at one point or a stack of points of shape ``(..., m)``."""
        return self.quadratic_form(as_point(x, self.dim))

    def quadratic_form(self, x: Any) -> Any:
        """Unchecked evaluation, generic over arrays and dual numbers.

        Every summand is a product with the factor ``x_j - p_ij``, so the i-th component
        vanishes exactly at ``p_i``.
        """
        diff = x[..., None, :] - self._centers
        return (self._coefficients * diff * diff).sum(axis=-1)

    def jacobian(self, x: Any) -> ndarray:
        """Closed form Jacobian ``2 a_ij (x_j - p_ij)`` of shape ``(..., ell, m)``."""
        x = as_point(x, self.dim)
        return 2 * self._coefficients * (x[..., None, :] - self._centers)

    def jacobian_ad(self, x: Any) -> ndarray:
        """Jacobian by forward-mode dual-number differentiation of :meth:`evaluate`."""
        return jacobian_fwd(self.quadratic_form, as_point(x, self.dim))

    ################################################################################
    ## API
    ################################################################################
    def require_equidimensional(self, operation: str = "This operation") -> None:
        """Raise :class:`DimensionError` unless ``ell == m``."""
        if not self.is_equidimensional:
            raise DimensionError(
                f"{operation} requires an equidimensional map, got ell={self.num_components}, "
                f"m={self.dim}."
            )

    def replicate(self, coefficients: Any = None, centers: Any = None) -> GdsMap:
        """Build a new map replacing the given data."""
        return type(self)(
            self.coefficients if coefficients is None else coefficients,
            self.centers if centers is None else centers,
        )

    def to_descriptor(self) -> dict[str, Any]:
        """JSON compatible descriptor ``{"A": ..., "p": ...}``."""
        return {"A": self.coefficients.tolist(), "p": self.centers.tolist()}


################################################################################
## CONSTRUCTORS
################################################################################
def new_gds_map(coefficients: Any, centers: Any) -> GdsMap:
    """Validated constructor for :class:`GdsMap`."""
    return GdsMap(coefficients, centers)


def distance_squared_map(centers: Any) -> GdsMap:
    """Distance-squared mapping ``D_p``: every coefficient equals one."""
    ell, m = _center_shape(centers)
    return GdsMap(np.ones((ell, m)), centers)


def lorentzian_map(centers: Any) -> GdsMap:
    """Lorentzian distance-squared mapping ``L_p``: ``a_i1 = -1`` and ``a_ij = 1`` otherwise."""
    ell, m = _center_shape(centers)
    coefficients = np.ones((ell, m))
    coefficients[:, 0] = -1
    return GdsMap(coefficients, centers)


def random_gds_map(
    m: int,
    rng: np.random.Generator,
    ell: int | None = None,
    low: float = 0.5,
    high: float = 2.0,
    center_std: float = 1.0,
) -> GdsMap:
    """Random map with coefficients of random sign and magnitude in ``[low, high]``.

    Args:
        m: source dimension.
        rng: numpy random generator.
        ell: number of components, defaults to ``m``.
        low: minimum coefficient magnitude (must be positive).
        high: maximum coefficient magnitude.
        center_std: standard deviation of the Gaussian central points.
    """
    if not 0 < low <= high:
        raise ValueError(f"Invalid magnitude range [{low}, {high}], expected 0 < low <= high.")
    ell = m if ell is None else ell
    signs = rng.choice((-1.0, 1.0), size=(ell, m))
    coefficients = signs * rng.uniform(low, high, size=(ell, m))
    centers = rng.normal(0.0, center_std, size=(ell, m))
    return GdsMap(coefficients, centers)


################################################################################
## AUXILIARY
################################################################################
def _as_rows(obj: Any, name: str) -> list[list[float]]:
    """Normalize nested sequences or arrays into a list of rows (may be ragged)."""
    if isinstance(obj, np.ndarray):
        if obj.ndim != 2:
            raise ConstructionError(f"Invalid {name}, expected 2 dimensions, got {obj.ndim}.")
        return obj.tolist()
    try:
        rows = [list(row) for row in obj]
    except TypeError as error:
        raise ConstructionError(f"Invalid {name}, expected a sequence of rows.") from error
    for row in rows:
        for entry in row:
            if isinstance(entry, bool) or not isinstance(entry, (int, float, np.number)):
                raise ConstructionError(f"Invalid {name} entry {entry!r}, expected real number.")
    return rows


def _center_shape(centers: Any) -> tuple[int, int]:
    rows = _as_rows(centers, "central points")
    if not rows or not rows[0]:
        raise ConstructionError("Central points must contain at least one point.")
    return len(rows), len(rows[0])
