# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Generalized distance-squared mappings library."""

from .descriptor import MAP_KIND_LIBRARY, map_from_descriptor
from .gds_map import (
    GdsMap,
    distance_squared_map,
    lorentzian_map,
    new_gds_map,
    random_gds_map,
)

__all__ = [
    "GdsMap",
    "new_gds_map",
    "distance_squared_map",
    "lorentzian_map",
    "random_gds_map",
    "map_from_descriptor",
    "MAP_KIND_LIBRARY",
]
