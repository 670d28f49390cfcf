# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Planar mappings: the singular set as a conic and fold/cusp classification.

For ``m = 2`` the Jacobian determinant is

    det JG(x) = 4 [a11 a22 (x1 - p11)(x2 - p22) - a12 a21 (x2 - p12)(x1 - p21)],

a conic without squared terms: a hyperbola with axis parallel asymptotes when
``a11 a22 != a12 a21``, and a straight line otherwise.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, NamedTuple

import numpy as np
from numpy import ndarray

from ..composition.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..exceptions import DimensionError
from ..maps import GdsMap
from ..utils.linalg import kernel_vector, numerical_rank
from ..utils.typing import as_point


class ConicCoefficients(NamedTuple):
    """Coefficients of ``c_xx x1^2 + c_yy x2^2 + c_xy x1 x2 + c_x x1 + c_y x2 + c_0``."""

    c_xx: float
    c_yy: float
    c_xy: float
    c_x: float
    c_y: float
    c_0: float

    @property
    def is_rectangular_hyperbola(self) -> bool:
        """No squared terms and a nonzero mixed term."""
        return self.c_xx == 0 and self.c_yy == 0 and self.c_xy != 0

    def evaluate(self, x: Any) -> Any:
        """Polynomial value at one point or a stack of points."""
        x = as_point(x, 2)
        x1, x2 = x[..., 0], x[..., 1]
        value = (
            self.c_xx * x1**2
            + self.c_yy * x2**2
            + self.c_xy * x1 * x2
            + self.c_x * x1
            + self.c_y * x2
            + self.c_0
        )
        return float(value) if np.ndim(value) == 0 else value

    def term_scale(self, x: Any) -> float:
        """Sum of the absolute values of the terms at a single point (at least one)."""
        x1, x2 = as_point(x, 2).reshape(2).tolist()
        terms = (
            self.c_xx * x1**2,
            self.c_yy * x2**2,
            self.c_xy * x1 * x2,
            self.c_x * x1,
            self.c_y * x2,
            self.c_0,
        )
        return max(1.0, sum(abs(term) for term in terms))

    def gradient(self, x: Any) -> ndarray:
        """Exact gradient."""
        x = as_point(x, 2)
        x1, x2 = x[..., 0], x[..., 1]
        return np.stack(
            [
                2 * self.c_xx * x1 + self.c_xy * x2 + self.c_x,
                2 * self.c_yy * x2 + self.c_xy * x1 + self.c_y,
            ],
            axis=-1,
        )

    def hessian(self) -> ndarray:
        """Exact (constant) Hessian."""
        return np.array([[2 * self.c_xx, self.c_xy], [self.c_xy, 2 * self.c_yy]])

    def to_dict(self) -> dict[str, float]:
        """JSON compatible representation."""
        return dict(self._asdict())


class SingularPointType(str, Enum):
    """Classification of a singular point of a planar mapping."""

    FOLD = "fold"
    CUSP = "cusp"
    DEGENERATE = "degenerate"
    UNRESOLVED = "unresolved"


def require_planar(G: GdsMap, operation: str = "This operation") -> None:
    """Raise :class:`DimensionError` unless ``G`` maps the plane to the plane."""
    # pylint: disable=invalid-name
    if G.shape != (2, 2):
        raise DimensionError(f"{operation} requires m = 2, got a map of shape {G.shape}.")


def conic_coefficients(G: GdsMap) -> ConicCoefficients:
    """Exact coefficients of ``det JG`` as a polynomial in ``(x1, x2)``."""
    # pylint: disable=invalid-name
    require_planar(G, "The conic expansion")
    (a11, a12), (a21, a22) = G.coefficients.tolist()
    (p11, p12), (p21, p22) = G.centers.tolist()
    alpha, beta = a11 * a22, a12 * a21
    return ConicCoefficients(
        c_xx=0.0,
        c_yy=0.0,
        c_xy=4 * (alpha - beta),
        c_x=4 * (-alpha * p22 + beta * p12),
        c_y=4 * (-alpha * p11 + beta * p21),
        c_0=4 * (alpha * p11 * p22 - beta * p12 * p21),
    )


def kernel_direction(G: GdsMap, x: Any, hint: ndarray | None = None) -> ndarray:
    """Unit kernel vector of ``JG(x)``, oriented along ``hint`` if given."""
    # pylint: disable=invalid-name
    eta = kernel_vector(G.jacobian(x))
    if hint is not None and eta @ hint < 0:
        eta = -eta
    return eta


def is_singular_point(
    G: GdsMap,
    x: Any,
    tolerances: Tolerances | None = None,
    conic: ConicCoefficients | None = None,
    scale: float | None = None,
) -> bool:
    """Whether ``|det JG(x)|`` is within the trace tolerance.

    The tolerance is relative to the larger of ``scale`` and the size of the individual
    terms of ``det JG`` at ``x``.
    """
    # pylint: disable=invalid-name
    require_planar(G, "Singular point classification")
    tolerances = tolerances or DEFAULT_TOLERANCES
    conic = conic or conic_coefficients(G)
    threshold = tolerances.trace * max(1.0 if scale is None else scale, conic.term_scale(x))
    return abs(conic.evaluate(as_point(x, 2).reshape(2))) <= threshold


def classify_singular_point(
    G: GdsMap,
    x: Any,
    tolerances: Tolerances | None = None,
    conic: ConicCoefficients | None = None,
    scale: float | None = None,
) -> SingularPointType:
    """Whitney fold/cusp criteria with exact derivatives of ``lambda = det JG``.

    With ``eta`` spanning the kernel of ``JG(x)``: fold if ``grad lambda . eta`` is
    nonzero, cusp if it vanishes while ``eta . H eta`` does not (``grad lambda != 0``),
    degenerate otherwise or when the Jacobian vanishes. Both tests are relative to the
    norms of the gradient and Hessian.

    Raises:
        ValueError: if ``x`` is not a singular point, see :func:`is_singular_point`.
    """
    # pylint: disable=invalid-name,too-many-arguments
    require_planar(G, "Singular point classification")
    tolerances = tolerances or DEFAULT_TOLERANCES
    conic = conic or conic_coefficients(G)
    x = as_point(x, 2)
    if not is_singular_point(G, x, tolerances, conic, scale):
        raise ValueError(
            f"Point {x.tolist()} is not a singular point (det JG = {conic.evaluate(x):.3e})."
        )
    jacobian = G.jacobian(x)
    if numerical_rank(jacobian, tolerances.numerical_rank) == 0:
        return SingularPointType.DEGENERATE
    gradient = conic.gradient(x)
    gradient_norm = np.linalg.norm(gradient)
    if gradient_norm == 0:
        return SingularPointType.DEGENERATE
    eta = kernel_vector(jacobian)
    if abs(gradient @ eta) > tolerances.classification * gradient_norm:
        return SingularPointType.FOLD
    hessian = conic.hessian()
    if abs(eta @ hessian @ eta) > tolerances.classification * np.linalg.norm(hessian):
        return SingularPointType.CUSP
    return SingularPointType.DEGENERATE
