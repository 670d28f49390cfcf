# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""JSON map descriptors."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import numpy as np

from ..exceptions import ConstructionError
from .gds_map import GdsMap, distance_squared_map, lorentzian_map

MAP_KIND_LIBRARY = {
    "distance-squared": distance_squared_map,
    "lorentzian": lorentzian_map,
}


def map_from_descriptor(
    descriptor: Mapping[str, Any],
    rng: np.random.Generator | None = None,
    dim: int | None = None,
) -> GdsMap:
    """Build a map from ``{"A": ..., "p": ...}`` or ``{"kind": ..., "p": ...}``.

    The central points may also be given as a sampler descriptor ``{"distribution": {...}}``,
    in which case ``m`` points of dimension ``m`` are drawn from ``rng``. The dimension
    is taken from ``A`` if present, else from ``dim``.

    Raises:
        ConstructionError: on malformed descriptors.
    """
    if not isinstance(descriptor, Mapping):
        raise ConstructionError(f"Invalid map descriptor {descriptor!r}, expected mapping.")
    if "p" not in descriptor:
        raise ConstructionError("Map descriptor is missing central points 'p'.")
    has_matrix, kind = "A" in descriptor, descriptor.get("kind")
    if has_matrix == (kind is not None):
        raise ConstructionError("Map descriptor requires exactly one of 'A' or 'kind'.")
    if has_matrix:
        dim = len(descriptor["A"][0]) if len(descriptor["A"]) else dim
    centers = _resolve_centers(descriptor["p"], rng, dim)
    if has_matrix:
        return GdsMap(descriptor["A"], centers)
    try:
        constructor = MAP_KIND_LIBRARY[kind]
    except (KeyError, TypeError) as error:
        raise ConstructionError(
            f"Unknown map kind {kind!r}, expected one of {sorted(MAP_KIND_LIBRARY)}."
        ) from error
    return constructor(centers)


def _resolve_centers(centers: Any, rng: np.random.Generator | None, dim: int | None) -> Any:
    if not isinstance(centers, Mapping):
        return centers
    if "distribution" not in centers:
        raise ConstructionError("Central point sampler requires a 'distribution' entry.")
    if rng is None or dim is None:
        raise ConstructionError(
            "Sampled central points require a random generator and a dimension."
        )
    from ..genericity.sampling import (  # pylint: disable=import-outside-toplevel,cyclic-import
        distribution_from_descriptor,
        sample_central_points,
    )

    try:
        distribution = distribution_from_descriptor(centers["distribution"])
    except ValueError as error:
        raise ConstructionError(str(error)) from error
    return sample_central_points(dim, distribution, rng)
