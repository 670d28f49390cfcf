# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Explicit central points in the bad set, for any coefficient matrix."""

from __future__ import annotations

from typing import Any

import numpy as np
from numpy import ndarray

from ..exceptions import DimensionError
from ..manifolds import ParamManifold
from ..utils.typing import as_real_array

COINCIDENCE_TOLERANCE: float = 1e-12


def construct_bad_p_immersion(f: ParamManifold, q0: Any) -> ndarray:
    """Central points ``p_i = f(q0)``.

    Every row of the composition Jacobian at ``q0`` carries the factors
    ``f_j(q0) - p_ij = 0``, so ``G o f`` is not an immersion at ``q0`` for any ``A``.
    """
    point = f.evaluate(q0)
    return np.tile(point, (f.ambient_dim, 1))


def construct_bad_p_injectivity(f: ParamManifold, q1: Any, q2: Any) -> ndarray:
    """Central points ``p_ij = (f_j(q1) + f_j(q2)) / 2``.

    Per coordinate ``(u_j - p_ij)^2 = (v_j - p_ij)^2``, hence ``G o f`` collides at
    ``(q1, q2)`` for any ``A``.

    Raises:
        ValueError: if ``f(q1) = f(q2)``.
    """
    u, v = _distinct_images(f, q1, q2)
    return np.tile((u + v) / 2, (f.ambient_dim, 1))


def construct_bad_p_injectivity_min_norm(
    f: ParamManifold, coefficients: Any, q1: Any, q2: Any, base: Any = None
) -> ndarray:
    """Central points closest to ``base`` among those colliding ``(q1, q2)`` under ``A``.

    The collision condition for row ``i`` is the linear equation ``w_i . p_i = s_i`` with
    ``w_ij = 2 a_ij (u_j - v_j)`` and ``s_i = sum_j a_ij (u_j^2 - v_j^2)``, where
    ``u = f(q1)`` and ``v = f(q2)``; each row is corrected by the minimum norm update.

    Raises:
        ValueError: if ``f(q1) = f(q2)``.
        DimensionError: if ``A`` or ``base`` do not have shape ``(m, m)``.
    """
    m = f.ambient_dim
    coefficients = as_real_array(coefficients, name="coefficient matrix", ndim=2)
    if coefficients.shape != (m, m):
        raise DimensionError(f"Coefficient matrix must have shape ({m}, {m}).")
    base = np.zeros((m, m)) if base is None else as_real_array(base, name="base points", ndim=2)
    if base.shape != (m, m):
        raise DimensionError(f"Base points must have shape ({m}, {m}).")
    u, v = _distinct_images(f, q1, q2)
    w = 2 * coefficients * (u - v)
    s = coefficients @ (u**2 - v**2)
    correction = (s - np.einsum("ij,ij->i", w, base)) / np.einsum("ij,ij->i", w, w)
    return base + correction[:, None] * w


def _distinct_images(f: ParamManifold, q1: Any, q2: Any) -> tuple[ndarray, ndarray]:
    u, v = f.evaluate(q1), f.evaluate(q2)
    if np.linalg.norm(u - v) <= COINCIDENCE_TOLERANCE * (1 + np.linalg.norm(u)):
        raise ValueError(
            "The parameters have the same image under f, which is already a collision."
        )
    return u, v
