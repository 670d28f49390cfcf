# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from test import PLANAR_A, PLANAR_CUSP, PLANAR_P, PLANAR_SEED, PLANAR_WINDOW

from numpy import abs as np_abs
from numpy import allclose, array
from numpy.linalg import norm
from numpy.random import default_rng
from pytest import fixture, mark, raises

from gdsq.exceptions import DimensionError
from gdsq.maps import GdsMap, random_gds_map
from gdsq.singularity import SingularCurve, SingularPointType, trace_singular_curve, tracing


################################################################################
## FIXTURES
################################################################################
@fixture(scope="module")
def planar_curve():
    return trace_singular_curve(GdsMap(PLANAR_A, PLANAR_P), PLANAR_WINDOW)


@fixture(scope="module")
def gaussian_curve():
    coefficients, centers = default_rng(PLANAR_SEED).normal(size=(2, 2, 2))
    return trace_singular_curve(GdsMap(coefficients, centers))


################################################################################
## TESTS
################################################################################
class TestPlanarFixture:
    """Test tracing of a hyperbolic singular set with one cusp."""

    def test_components(self, planar_curve):
        assert isinstance(planar_curve, SingularCurve)
        assert len(planar_curve.components) == 2
        assert planar_curve.closed == (False, False)

    def test_cusp(self, planar_curve):
        assert planar_curve.count(SingularPointType.CUSP) == 1
        assert norm(planar_curve.cusps[0] - array(PLANAR_CUSP)) < 1e-3

    def test_folds(self, planar_curve):
        assert planar_curve.count(SingularPointType.FOLD) >= 50
        assert planar_curve.count(SingularPointType.DEGENERATE) == 0

    def test_on_curve(self, planar_curve):
        values = planar_curve.conic.evaluate(planar_curve.vertices)
        assert np_abs(values).max() < 1e-8 * planar_curve.scale

    def test_inside_window(self, planar_curve):
        (x1_lo, x1_hi), (x2_lo, x2_hi) = PLANAR_WINDOW
        x1, x2 = planar_curve.vertices.T
        assert ((x1 >= x1_lo) & (x1 <= x1_hi) & (x2 >= x2_lo) & (x2 <= x2_hi)).all()

    def test_step(self, planar_curve):
        for component in planar_curve.components:
            gaps = norm(component[1:] - component[:-1], axis=-1)
            assert gaps.max() <= 2 * planar_curve.step

    def test_rows(self, planar_curve):
        rows = planar_curve.rows()
        assert len(rows) == len(planar_curve.vertices)
        assert sum(label == "cusp" for _, _, label in rows) == 1

    def test_to_dict(self, planar_curve):
        description = planar_curve.to_dict()
        assert description["counts"]["cusp"] == 1
        assert description["rectangular_hyperbola"]
        assert description["window"] == PLANAR_WINDOW
        assert len(description["components"]) == 2


class TestGaussianFixture:
    """Test tracing for central points drawn from a pinned-seed Gaussian."""

    def test_centers_on_curve(self, gaussian_curve):
        coefficients, centers = default_rng(PLANAR_SEED).normal(size=(2, 2, 2))
        for center in centers:
            assert abs(gaussian_curve.conic.evaluate(center)) < 1e-12 * gaussian_curve.scale
            distances = norm(gaussian_curve.vertices - center, axis=-1)
            assert distances.min() <= 2 * gaussian_curve.step
        assert coefficients.shape == (2, 2)

    def test_generic_margins(self, gaussian_curve):
        fold = gaussian_curve.count(SingularPointType.FOLD)
        cusp = gaussian_curve.count(SingularPointType.CUSP)
        assert fold > 0
        assert fold + cusp == len(gaussian_curve.vertices)
        assert gaussian_curve.count(SingularPointType.DEGENERATE) == 0
        assert gaussian_curve.count(SingularPointType.UNRESOLVED) == 0

    def test_on_curve(self, gaussian_curve):
        values = gaussian_curve.conic.evaluate(gaussian_curve.vertices)
        assert np_abs(values).max() < 1e-8 * gaussian_curve.scale


class TestTraceSingularCurve:
    """Test tracing options and edge cases."""

    def test_rank_one_line(self, rank_one_map):
        curve = trace_singular_curve(rank_one_map)
        x1, x2 = curve.vertices.T
        assert len(curve.vertices) > 100
        assert np_abs(x2 - 2 * x1).max() / 5**0.5 < 1e-6
        assert curve.count(SingularPointType.FOLD) == len(curve.vertices)

    def test_default_window(self, planar_map):
        curve = trace_singular_curve(planar_map, step=0.05)
        assert curve.window == ((-3.0, 4.0), (-3.0, 5.0))

    def test_empty(self, planar_map):
        curve = trace_singular_curve(planar_map, [[10, 11], [10, 11]])
        assert curve.is_empty
        assert curve.vertices.shape == (0, 2)
        assert curve.cusps.shape == (0, 2)
        assert curve.rows() == []

    def test_deterministic(self, planar_map):
        first = trace_singular_curve(planar_map, step=0.05)
        second = trace_singular_curve(planar_map, step=0.05)
        assert allclose(first.vertices, second.vertices, rtol=0, atol=0)

    def test_random(self):
        G = random_gds_map(2, default_rng(4))
        curve = trace_singular_curve(G, step=0.05)
        assert not curve.is_empty
        assert np_abs(curve.conic.evaluate(curve.vertices)).max() < 1e-8 * curve.scale

    @mark.parametrize(
        "kwargs",
        [
            {"step": 0.0},
            {"step": -0.1},
            {"grid": 1},
            {"window": [[0, 1]]},
            {"window": [[1, 0], [0, 1]]},
            {"window": [[0, float("inf")], [0, 1]]},
        ],
        ids=["zero-step", "negative-step", "grid", "shape", "order", "infinite"],
    )
    def test_errors(self, planar_map, kwargs):
        with raises(ValueError):
            trace_singular_curve(planar_map, **kwargs)

    def test_not_planar(self):
        with raises(DimensionError):
            trace_singular_curve(random_gds_map(3, default_rng(0)))

    def test_unresolved_cusp(self, planar_map, monkeypatch):
        monkeypatch.setattr(tracing, "_bisect", lambda *args: None)
        curve = trace_singular_curve(planar_map, PLANAR_WINDOW)
        assert curve.count(SingularPointType.UNRESOLVED) == 1
        assert curve.count(SingularPointType.CUSP) == 0
        assert curve.to_dict()["counts"]["unresolved"] == 1
