# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from test import PLANAR_A, PLANAR_P, RANK_ONE_A

from numpy.random import default_rng
from pytest import fixture

from gdsq.maps import GdsMap


@fixture
def rng():
    return default_rng(1234)


@fixture
def planar_map():
    """Equidimensional map on the plane with a single cusp."""
    return GdsMap(PLANAR_A, PLANAR_P)


@fixture
def rank_one_map():
    """Planar map with a rank one coefficient matrix (straight singular set)."""
    return GdsMap(RANK_ONE_A, PLANAR_P)
