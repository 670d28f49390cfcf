# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from test import PLANAR_CUSP

from numpy import allclose, array, eye, isclose
from numpy.random import default_rng
from pytest import mark, raises

from gdsq.exceptions import DimensionError
from gdsq.maps import GdsMap, random_gds_map
from gdsq.singularity import (
    ConicCoefficients,
    SingularPointType,
    classify_singular_point,
    conic_coefficients,
    det_jacobian,
    is_singular_point,
    kernel_direction,
)


################################################################################
## CONIC
################################################################################
class TestConicCoefficients:
    """Test the exact expansion of the Jacobian determinant."""

    def test_planar_map(self, planar_map):
        conic = conic_coefficients(planar_map)
        assert conic == ConicCoefficients(0.0, 0.0, 8.0, -8.0, -4.0, 0.0)
        assert conic.is_rectangular_hyperbola

    def test_rank_one(self, rank_one_map):
        conic = conic_coefficients(rank_one_map)
        assert conic.c_xy == 0.0
        assert (conic.c_x, conic.c_y) == (-32.0, 16.0)
        assert not conic.is_rectangular_hyperbola

    @mark.parametrize("seed", range(10))
    def test_matches_determinant(self, seed):
        rng = default_rng(seed)
        G = random_gds_map(2, rng)
        points = rng.normal(size=(20, 2)) * 3
        assert allclose(conic_coefficients(G).evaluate(points), det_jacobian(G, points))

    def test_gradient(self, planar_map):
        conic, h = conic_coefficients(planar_map), 1e-6
        x = array([0.7, -0.4])
        numeric = [(conic.evaluate(x + d) - conic.evaluate(x - d)) / (2 * h) for d in h * eye(2)]
        assert allclose(conic.gradient(x), numeric, rtol=1e-6)
        assert conic.hessian().tolist() == [[0.0, 8.0], [8.0, 0.0]]

    def test_evaluate_scalar(self, planar_map):
        assert conic_coefficients(planar_map).evaluate((1.0, 1.0)) == -4.0

    def test_to_dict(self, planar_map):
        assert conic_coefficients(planar_map).to_dict()["c_xy"] == 8.0

    def test_not_planar(self):
        with raises(DimensionError, match="m = 2"):
            conic_coefficients(random_gds_map(3, default_rng(0)))


################################################################################
## CLASSIFICATION
################################################################################
class TestClassifySingularPoint:
    """Test fold and cusp criteria."""

    def test_center_is_fold(self, planar_map):
        assert classify_singular_point(planar_map, (0.0, 0.0)) is SingularPointType.FOLD
        assert classify_singular_point(planar_map, (1.0, 2.0)) is SingularPointType.FOLD

    def test_near_cusp_is_fold(self, planar_map):
        x1 = PLANAR_CUSP[0] + 0.1
        point = (x1, 2 * x1 / (2 * x1 - 1))
        assert classify_singular_point(planar_map, point) is SingularPointType.FOLD

    def test_coincident_centers(self, planar_map):
        G = planar_map.replicate(centers=[[0.0, 0.0], [0.0, 0.0]])
        assert classify_singular_point(G, (0.0, 0.0)) is SingularPointType.DEGENERATE

    @mark.parametrize("x1", [-2.0, 0.0, 1.0, 3.0])
    def test_rank_one_folds(self, rank_one_map, x1):
        label = classify_singular_point(rank_one_map, (x1, 2 * x1))
        assert label is SingularPointType.FOLD

    @mark.parametrize("point", [(1.0, 1.0), (0.0, 1.0), (3.0, -2.0)], ids=["a", "b", "c"])
    def test_regular_point(self, planar_map, point):
        assert not is_singular_point(planar_map, point)
        with raises(ValueError, match="not a singular point"):
            classify_singular_point(planar_map, point)

    def test_singular_point(self, planar_map):
        x1 = PLANAR_CUSP[0]
        assert is_singular_point(planar_map, (0.0, 0.0))
        assert is_singular_point(planar_map, (x1, 2 * x1 / (2 * x1 - 1)))

    def test_scale(self, planar_map):
        point = (0.0, 1e-7)
        assert not is_singular_point(planar_map, point)
        assert is_singular_point(planar_map, point, scale=1e3)

    def test_not_planar(self):
        with raises(DimensionError):
            classify_singular_point(GdsMap(eye(3) + 1, eye(3)), (0, 0, 0))


def test_kernel_direction(planar_map):
    """Test unit kernel vectors and their orientation."""
    eta = kernel_direction(planar_map, (0.0, 0.0))
    assert isclose(abs(eta @ array([2.0, 1.0])), 5**0.5)
    assert allclose(planar_map.jacobian((0.0, 0.0)) @ eta, 0.0, atol=1e-12)
    hint = array([-2.0, -1.0])
    assert kernel_direction(planar_map, (0.0, 0.0), hint) @ hint > 0
