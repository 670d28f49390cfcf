# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Compositions ``G o f`` of a mapping with a parametrized manifold."""

from __future__ import annotations

from typing import Any

import numpy as np
from numpy import ndarray

from ..exceptions import DimensionError
from ..manifolds import ParamManifold
from ..maps import GdsMap
from ..utils.dual import jacobian_fwd


def require_composable(G: GdsMap, f: ParamManifold, operation: str = "Composition") -> None:
    """Check ``G`` is equidimensional with source equal to the ambient space of ``f``."""
    # pylint: disable=invalid-name
    G.require_equidimensional(operation)
    if G.dim != f.ambient_dim:
        raise DimensionError(
            f"{operation} requires matching dimensions, map acts on R^{G.dim} "
            f"but manifold lives in R^{f.ambient_dim}."
        )


def composed_evaluate(G: GdsMap, f: ParamManifold, q: Any, validate: bool = True) -> ndarray:
    """Evaluate ``(G o f)(q)`` for one point or a stack of points."""
    # pylint: disable=invalid-name
    if G.dim != f.ambient_dim:
        raise DimensionError(
            f"Cannot compose a map on R^{G.dim} with a manifold in R^{f.ambient_dim}."
        )
    return G.quadratic_form(f.evaluate(q, validate=validate))


def composition_jacobian(G: GdsMap, f: ParamManifold, q: Any, validate: bool = True) -> ndarray:
    """Jacobian of ``G o f`` by the row formula.

    Entry ``(i, k)`` is ``2 sum_j a_ij (f_j(q) - p_ij) df_j/dt_k(q)``, that is the closed
    form Jacobian of ``G`` at ``f(q)`` times ``Jf(q)``. Shape ``(..., m, n)``.
    """
    # pylint: disable=invalid-name
    require_composable(G, f, "The composition Jacobian")
    point = f.evaluate(q, validate=validate)
    weights = 2 * G.coefficients * (point[..., None, :] - G.centers)
    return np.einsum("...ij,...jk->...ik", weights, f.jacobian(q, validate=validate))


def composition_jacobian_ad(G: GdsMap, f: ParamManifold, q: Any) -> ndarray:
    """Jacobian of ``G o f`` by dual-number differentiation of the composed evaluator."""
    # pylint: disable=invalid-name
    require_composable(G, f, "The composition Jacobian")
    q = f.domain.validate(q)
    return jacobian_fwd(lambda t: G.quadratic_form(f.coordinates(t)), q)


def gamma_pair(G: GdsMap, f: ParamManifold, q: Any, q_prime: Any) -> ndarray:
    """Pair map ``((G o f)(q), (G o f)(q'))`` in ``R^(2m)``.

    Collisions of ``G o f`` are exactly the pairs mapped onto the diagonal.
    """
    # pylint: disable=invalid-name
    require_composable(G, f, "The pair map")
    first = composed_evaluate(G, f, q)
    second = composed_evaluate(G, f, q_prime)
    first, second = np.broadcast_arrays(first, second)
    return np.concatenate([first, second], axis=-1)


def image_gap(G: GdsMap, f: ParamManifold, q: Any, q_prime: Any) -> Any:
    """Euclidean distance ``||(G o f)(q) - (G o f)(q')||``."""
    # pylint: disable=invalid-name
    pair = gamma_pair(G, f, q, q_prime)
    gap = np.linalg.norm(pair[..., : G.dim] - pair[..., G.dim :], axis=-1)
    return float(gap) if gap.ndim == 0 else gap
