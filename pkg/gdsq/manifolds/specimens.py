# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Catalog of closed form specimen manifolds.

Positive specimens (circle, trefoil, torus) are embeddings; the figure eight is an
immersion with a double point and the cusp curve is injective with a rank drop.
"""

from __future__ import annotations

from typing import Any

import numpy as np
from numpy import ndarray, pi

from ..exceptions import DimensionError
from ..utils.dual import cos, sin, stack_components
from ..utils.typing import as_real_array, isint
from .domain import ParamDomain
from .manifold import ParamManifold

TWO_PI: float = 2 * pi


################################################################################
## CURVES
################################################################################
def circle(radius: float = 1.0, center: Any = None, m: int = 2) -> ParamManifold:
    """Round circle ``t -> center + radius (cos t, sin t, 0, ..., 0)`` in ``R^m``."""
    _validate_dim(m, 2, "circle")
    if radius <= 0:
        raise ValueError(f"Circle radius must be positive, received {radius}.")
    center = np.zeros(m) if center is None else as_real_array(center, name="center", ndim=1)
    if center.size != m:
        raise DimensionError(f"Circle center has dimension {center.size}, expected {m}.")
    offsets = [float(c) for c in center]

    def coordinates(q):
        t = q[..., 0]
        zero = 0.0 * t
        planar = [offsets[0] + radius * cos(t), offsets[1] + radius * sin(t)]
        return stack_components(planar + [offset + zero for offset in offsets[2:]])

    def derivatives(q: ndarray) -> ndarray:
        t = q[..., 0]
        column = np.zeros(t.shape + (m,))
        column[..., 0] = -radius * np.sin(t)
        column[..., 1] = radius * np.cos(t)
        return column[..., None]

    return ParamManifold(
        "circle",
        _periodic_interval(),
        m,
        coordinates,
        derivatives,
        claims_immersion=True,
        claims_injective=True,
        parameters={"radius": radius, "center": offsets, "m": m},
    )


def trefoil() -> ParamManifold:
    """Trefoil knot ``(sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t)`` in ``R^3``."""

    def coordinates(q):
        t = q[..., 0]
        return stack_components(
            [sin(t) + 2 * sin(2 * t), cos(t) - 2 * cos(2 * t), -sin(3 * t)]
        )

    def derivatives(q: ndarray) -> ndarray:
        t = q[..., 0]
        column = np.stack(
            [
                np.cos(t) + 4 * np.cos(2 * t),
                -np.sin(t) + 4 * np.sin(2 * t),
                -3 * np.cos(3 * t),
            ],
            axis=-1,
        )
        return column[..., None]

    return ParamManifold(
        "trefoil",
        _periodic_interval(),
        3,
        coordinates,
        derivatives,
        claims_immersion=True,
        claims_injective=True,
    )


def figure_eight() -> ParamManifold:
    """Lemniscate ``(sin t, sin t cos t)``: immersed, double point ``f(0) = f(pi)``."""

    def coordinates(q):
        t = q[..., 0]
        return stack_components([sin(t), sin(t) * cos(t)])

    def derivatives(q: ndarray) -> ndarray:
        t = q[..., 0]
        return np.stack([np.cos(t), np.cos(2 * t)], axis=-1)[..., None]

    return ParamManifold(
        "figure-eight",
        _periodic_interval(),
        2,
        coordinates,
        derivatives,
        claims_immersion=True,
        claims_injective=False,
    )


def cusp_curve() -> ParamManifold:
    """Semicubical parabola ``(t^2, t^3)`` on ``[-1, 1]``: injective, singular at ``0``."""

    def coordinates(q):
        t = q[..., 0]
        return stack_components([t**2, t**3])

    def derivatives(q: ndarray) -> ndarray:
        t = q[..., 0]
        return np.stack([2 * t, 3 * t**2], axis=-1)[..., None]

    return ParamManifold(
        "cusp",
        ParamDomain([-1.0], [1.0], [False]),
        2,
        coordinates,
        derivatives,
        claims_immersion=False,
        claims_injective=True,
    )


################################################################################
## SURFACES
################################################################################
def torus_surface(m: int = 4, R: float = 2.0, r: float = 1.0) -> ParamManifold:
    """Flat torus ``(R cos u, R sin u, r cos v, r sin v)`` padded with zeros to ``R^m``."""
    # pylint: disable=invalid-name
    _validate_dim(m, 4, "torus")
    if not R > r > 0:
        raise ValueError(f"Torus radii must satisfy R > r > 0, received R={R}, r={r}.")

    def coordinates(q):
        u, v = q[..., 0], q[..., 1]
        zero = 0.0 * u
        head = [R * cos(u), R * sin(u), r * cos(v), r * sin(v)]
        return stack_components(head + [zero] * (m - 4))

    def derivatives(q: ndarray) -> ndarray:
        u, v = q[..., 0], q[..., 1]
        jacobian = np.zeros(u.shape + (m, 2))
        jacobian[..., 0, 0] = -R * np.sin(u)
        jacobian[..., 1, 0] = R * np.cos(u)
        jacobian[..., 2, 1] = -r * np.sin(v)
        jacobian[..., 3, 1] = r * np.cos(v)
        return jacobian

    return ParamManifold(
        "torus",
        ParamDomain([0.0, 0.0], [TWO_PI, TWO_PI], [True, True]),
        m,
        coordinates,
        derivatives,
        claims_immersion=True,
        claims_injective=True,
        parameters={"m": m, "R": R, "r": r},
    )


################################################################################
## AUXILIARY
################################################################################
def _periodic_interval() -> ParamDomain:
    return ParamDomain([0.0], [TWO_PI], [True])


def _validate_dim(m: int, minimum: int, name: str) -> None:
    if not isint(m):
        raise TypeError(f"Invalid ambient dimension for {name}, expected int but got {m!r}.")
    if m < minimum:
        raise DimensionError(f"The {name} requires ambient dimension m >= {minimum}, got {m}.")
