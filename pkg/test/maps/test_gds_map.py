# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from test import NON_FINITE

from numpy import abs as np_abs
from numpy import allclose, array, eye, ones
from numpy.random import default_rng
from pytest import mark, raises, warns

from gdsq.exceptions import ConditioningWarning, ConstructionError, DimensionError
from gdsq.maps import (
    GdsMap,
    distance_squared_map,
    lorentzian_map,
    new_gds_map,
    random_gds_map,
)


################################################################################
## CONSTRUCTION
################################################################################
class TestInit:
    """Test map construction and validation."""

    def test_basic(self):
        G = GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)])
        assert G.shape == (2, 2)
        assert G.num_components == 2
        assert G.dim == 2
        assert G.is_equidimensional
        assert G.coefficients.dtype == float

    def test_rectangular(self):
        G = new_gds_map(ones((3, 2)), [[0, 0], [1, 0], [0, 1]])
        assert G.shape == (3, 2)
        assert not G.is_equidimensional
        with raises(DimensionError, match="equidimensional"):
            G.require_equidimensional()

    def test_zero_entry(self):
        with raises(ConstructionError, match=r"\(1, 2\)") as info:
            GdsMap([[1, 0], [1, 1]], [(0, 0), (0, 0)])
        assert info.value.index == (1, 2)

    def test_ragged_coefficients(self):
        with raises(ConstructionError) as info:
            GdsMap([[1, 2], [3]], [(0, 0), (0, 0)])
        assert info.value.index == (2,)

    def test_center_count(self):
        with raises(ConstructionError, match="Expected 2 central points"):
            GdsMap([[1, 2], [3, 4]], [(0, 0)])

    def test_center_dimension(self):
        with raises(ConstructionError) as info:
            GdsMap([[1, 2], [3, 4]], [(0, 0), (0, 0, 0)])
        assert info.value.index == (2,)

    @mark.parametrize("value", NON_FINITE, ids=[str(v) for v in NON_FINITE])
    def test_not_finite(self, value):
        with raises(ConstructionError, match="finite"):
            GdsMap([[1, value]], [(0, 0)])
        with raises(ConstructionError, match="finite"):
            GdsMap([[1, 1]], [(0, value)])

    @mark.parametrize(
        "coefficients",
        cases := [5, [[1, "a"]], [[1, True]], [[1, None]], array([1.0, 2.0]), [], [[]]],
        ids=["scalar", "str", "bool", "none", "flat-array", "empty", "empty-row"],
    )
    def test_malformed(self, coefficients):
        with raises(ConstructionError):
            GdsMap(coefficients, [(0, 0)])

    def test_is_value_error(self):
        with raises(ValueError):
            GdsMap([[0]], [(0,)])

    def test_conditioning_warning(self):
        with warns(ConditioningWarning):
            GdsMap([[1, 1e-9], [1, 1]], [(0, 0), (0, 0)])

    def test_immutable(self):
        coefficients = [[1.0, 2.0], [3.0, 4.0]]
        G = GdsMap(coefficients, [(0, 0), (1, 1)])
        coefficients[0][0] = 9.0
        assert G.coefficients[0, 0] == 1.0
        with raises(ValueError):
            G.centers[0, 0] = 1.0
        with raises(AttributeError):
            G.foo = 1  # pylint: disable=attribute-defined-outside-init


class TestMagicMethods:
    """Test equality, hashing and representation."""

    def test_eq(self):
        G = GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)])
        assert G == GdsMap(array([[1.0, 2.0], [3.0, 4.0]]), array([[0.0, 0.0], [1.0, 1.0]]))
        assert G != GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 2)])
        assert G != "map"

    def test_hash(self):
        G = GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)])
        assert hash(G) == hash(GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)]))
        assert len({G, G.replicate()}) == 1

    def test_repr(self):
        G = GdsMap([[1]], [(2,)])
        assert repr(G) == "GdsMap(coefficients=[[1.0]], centers=[[2.0]])"


################################################################################
## EVALUATION
################################################################################
class TestEvaluate:
    """Test evaluation and Jacobians."""

    def test_example(self):
        G = GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)])
        assert G.evaluate((1, 2)).tolist() == [9.0, 4.0]
        assert G.jacobian((1, 2)).tolist() == [[2.0, 8.0], [0.0, 8.0]]

    def test_one_dimensional(self):
        G = GdsMap([[1]], [(0,)])
        assert G.evaluate(3).tolist() == [9.0]
        assert G.jacobian(3).tolist() == [[6.0]]

    def test_distance_squared(self):
        G = distance_squared_map([(0, 0)])
        assert G.shape == (1, 2)
        assert G.evaluate((3, 4)).tolist() == [25.0]

    def test_component_vanishes_at_center(self):
        G = random_gds_map(4, default_rng(3))
        for i, center in enumerate(G.centers):
            assert G.evaluate(center)[i] == 0.0

    def test_batch(self):
        G = random_gds_map(3, default_rng(5))
        points = default_rng(6).normal(size=(7, 3))
        values = G.evaluate(points)
        jacobians = G.jacobian(points)
        assert values.shape == (7, 3)
        assert jacobians.shape == (7, 3, 3)
        for point, value, jacobian in zip(points, values, jacobians):
            assert allclose(value, G.evaluate(point))
            assert allclose(jacobian, G.jacobian(point))

    @mark.parametrize("x", [(1.0,), (1.0, 2.0, 3.0), 1.0], ids=["short", "long", "scalar"])
    def test_dimension_mismatch(self, x):
        G = GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)])
        with raises(DimensionError):
            G.evaluate(x)
        with raises(DimensionError):
            G.jacobian(x)

    @mark.parametrize("seed", range(50))
    def test_jacobian_automatic_differentiation(self, seed):
        rng = default_rng(seed)
        m = int(rng.integers(1, 6))
        G = random_gds_map(m, rng, ell=int(rng.integers(1, 6)))
        for x in rng.normal(size=(10, m)):
            closed, automatic = G.jacobian(x), G.jacobian_ad(x)
            assert np_abs(closed - automatic).max() <= 1e-9 * (1 + np_abs(closed).max())

    @mark.parametrize("seed", range(50))
    def test_jacobian_finite_differences(self, seed):
        rng = default_rng(seed)
        m, h = int(rng.integers(1, 6)), 1e-6
        G = random_gds_map(m, rng)
        for x in rng.normal(size=(10, m)):
            jacobian = G.jacobian(x)
            for j, step in enumerate(h * eye(m)):
                column = (G.evaluate(x + step) - G.evaluate(x - step)) / (2 * h)
                scale = 1 + np_abs(jacobian[:, j]).max()
                assert np_abs(column - jacobian[:, j]).max() <= 1e-5 * scale


################################################################################
## API
################################################################################
class TestApi:
    """Test replication and descriptors."""

    def test_replicate(self):
        G = GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)])
        H = G.replicate(centers=[(5, 5), (6, 6)])
        assert H.coefficients.tolist() == G.coefficients.tolist()
        assert H.centers.tolist() == [[5.0, 5.0], [6.0, 6.0]]
        assert G.centers.tolist() == [[0.0, 0.0], [1.0, 1.0]]

    def test_to_descriptor(self):
        G = GdsMap([[1, 2], [3, 4]], [(0, 0), (1, 1)])
        assert G.to_descriptor() == {"A": [[1.0, 2.0], [3.0, 4.0]], "p": [[0.0, 0.0], [1.0, 1.0]]}
        assert GdsMap(*G.to_descriptor().values()) == G


################################################################################
## CONSTRUCTORS
################################################################################
class TestConstructors:
    """Test named map families."""

    def test_distance_squared(self):
        G = distance_squared_map([(0, 0, 0), (1, 1, 1)])
        assert G.coefficients.tolist() == [[1.0] * 3] * 2

    def test_lorentzian(self):
        G = lorentzian_map([(0, 0), (1, 1)])
        assert G.coefficients.tolist() == [[-1.0, 1.0], [-1.0, 1.0]]

    @mark.parametrize("constructor", [distance_squared_map, lorentzian_map])
    def test_empty(self, constructor):
        with raises(ConstructionError):
            constructor([])

    def test_random(self):
        G = random_gds_map(4, default_rng(0), ell=6)
        assert G.shape == (6, 4)
        magnitudes = np_abs(G.coefficients)
        assert magnitudes.min() >= 0.5
        assert magnitudes.max() <= 2.0

    def test_random_reproducible(self):
        assert random_gds_map(3, default_rng(11)) == random_gds_map(3, default_rng(11))

    @mark.parametrize("low, high", [(0.0, 1.0), (-1.0, 1.0), (2.0, 1.0)])
    def test_random_range(self, low, high):
        with raises(ValueError, match="magnitude range"):
            random_gds_map(2, default_rng(0), low=low, high=high)
