# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from numpy import allclose, array, isclose, ones
from numpy.linalg import det, norm
from numpy.random import default_rng
from pytest import mark, raises

from gdsq.composition import DEFAULT_TOLERANCES
from gdsq.exceptions import CollisionNotFoundError, DimensionError
from gdsq.maps import GdsMap, random_gds_map
from gdsq.singularity import (
    CenterCheck,
    Collision,
    SingularityReport,
    det_jacobian,
    find_collision,
    verify_lemma_singular,
)
from gdsq.singularity import lemmas


################################################################################
## SINGULARITY
################################################################################
class TestDetJacobian:
    """Test Jacobian determinants."""

    def test_value(self, planar_map):
        x = array([0.3, -1.2])
        assert allclose(det_jacobian(planar_map, x), det(planar_map.jacobian(x)))

    def test_zero_at_centers(self):
        G = random_gds_map(4, default_rng(0))
        for center in G.centers:
            assert det_jacobian(G, center) == 0.0

    def test_batch(self, planar_map):
        values = det_jacobian(planar_map, [[0.0, 0.0], [1.0, 2.0], [3.0, 3.0]])
        assert values.shape == (3,)
        assert values[0] == values[1] == 0.0
        assert values[2] != 0.0

    def test_rectangular(self):
        with raises(DimensionError):
            det_jacobian(GdsMap(ones((3, 2)), [[0, 0]] * 3), (0, 0))


class TestVerifyLemmaSingular:
    """Test singularity at the central points."""

    @mark.parametrize("seed", range(100))
    def test_random_maps(self, seed):
        rng = default_rng(seed)
        G = random_gds_map(int(rng.integers(1, 6)), rng)
        report = verify_lemma_singular(G)
        assert isinstance(report, SingularityReport)
        assert report.passed
        assert len(report.centers) == G.dim
        for check in report.centers:
            assert check.row_zero
            assert check.rank <= G.dim - 1
            assert check.sigma_min < 1e-12 * (1 + check.sigma_max)

    def test_planar(self, planar_map):
        report = verify_lemma_singular(planar_map)
        assert [check.index for check in report.centers] == [1, 2]
        assert [check.rank for check in report.centers] == [1, 1]

    def test_coincident_centers(self, planar_map):
        G = planar_map.replicate(centers=[[0.0, 0.0], [0.0, 0.0]])
        report = verify_lemma_singular(G)
        assert [check.rank for check in report.centers] == [0, 0]
        assert report.passed

    def test_to_dict(self, planar_map):
        description = verify_lemma_singular(planar_map).to_dict()
        assert description["m"] == 2
        assert description["passed"]
        assert description["centers"][0]["row_zero"]

    def test_center_check(self):
        check = CenterCheck(index=1, dim=2, row_zero=True, rank=2, sigma_min=1.0, sigma_max=1.0)
        assert not check.passed
        check = CenterCheck(index=1, dim=2, row_zero=False, rank=1, sigma_min=0.0, sigma_max=1.0)
        assert not check.passed

    def test_rectangular(self):
        with raises(DimensionError, match="singularity check"):
            verify_lemma_singular(GdsMap(ones((1, 2)), [[0, 0]]))


################################################################################
## NON-INJECTIVITY
################################################################################
class TestFindCollision:
    """Test the constructive collision search."""

    @mark.parametrize("seed", range(20))
    def test_random_maps(self, seed):
        rng = default_rng(seed)
        G = random_gds_map(int(rng.integers(2, 5)), rng)
        collision = find_collision(G, seed=rng)
        assert isinstance(collision, Collision)
        assert norm(G.evaluate(collision.x) - G.evaluate(collision.x_prime)) < 1e-9
        assert collision.gap < 1e-9
        assert collision.separation > 1e-3

    def test_one_dimensional(self):
        G = GdsMap([[2.0]], [[1.0]])
        collision = find_collision(G, seed=0)
        assert isclose(abs(collision.x[0] - 1.0), abs(collision.x_prime[0] - 1.0))

    def test_planar(self, planar_map):
        collision = find_collision(planar_map, seed=7)
        assert collision.gap < DEFAULT_TOLERANCES.collision
        assert collision.separation > lemmas.MIN_SEPARATION

    def test_deterministic(self):
        G = random_gds_map(3, default_rng(1))
        first, second = find_collision(G, seed=3), find_collision(G, seed=3)
        assert first.x.tolist() == second.x.tolist()
        assert first.x_prime.tolist() == second.x_prime.tolist()

    def test_to_dict(self, planar_map):
        collision = find_collision(planar_map, seed=0)
        description = collision.to_dict()
        assert description["x"] == collision.x.tolist()
        assert description["separation"] == collision.separation

    def test_not_found(self, planar_map, monkeypatch):
        monkeypatch.setattr(lemmas, "_polish", lambda G, x, start: x)
        with raises(CollisionNotFoundError, match="3 attempts"):
            find_collision(planar_map, attempts=3, seed=0)

    def test_attempts(self, planar_map):
        with raises(ValueError, match="attempts"):
            find_collision(planar_map, attempts=0)

    def test_rectangular(self):
        with raises(DimensionError):
            find_collision(GdsMap(ones((3, 2)), [[0, 0]] * 3))
