# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from numpy import einsum, eye, ones, pi
from numpy.linalg import norm
from numpy.random import default_rng
from pytest import mark, raises

from gdsq.composition import (
    Verdict,
    composition_jacobian,
    image_gap,
    immersion_check,
    injectivity_check,
    problem_scale,
)
from gdsq.exceptions import DimensionError
from gdsq.genericity import (
    construct_bad_p_immersion,
    construct_bad_p_injectivity,
    construct_bad_p_injectivity_min_norm,
)
from gdsq.manifolds import circle, cusp_curve, figure_eight, torus_surface, trefoil
from gdsq.maps import GdsMap
from gdsq.utils.linalg import smallest_singular_values


def _sigma_min(G, f, q):
    return smallest_singular_values(composition_jacobian(G, f, q))


################################################################################
## IMMERSION
################################################################################
class TestBadImmersion:
    """Test central points forcing a rank drop."""

    @mark.parametrize("seed", range(5))
    def test_circle(self, seed):
        A = default_rng(seed).normal(size=(2, 2))
        G = GdsMap(A, construct_bad_p_immersion(circle(), 1.0))
        assert _sigma_min(G, circle(), 1.0) < 1e-12

    @mark.parametrize("seed", range(5))
    def test_trefoil(self, seed):
        A = default_rng(seed).normal(size=(3, 3))
        G = GdsMap(A, construct_bad_p_immersion(trefoil(), 2.0))
        assert _sigma_min(G, trefoil(), 2.0) < 1e-12

    def test_torus(self):
        f = torus_surface()
        A = default_rng(0).normal(size=(4, 4))
        G = GdsMap(A, construct_bad_p_immersion(f, (0.3, 1.2)))
        assert _sigma_min(G, f, (0.3, 1.2)) < 1e-12

    def test_shape(self):
        centers = construct_bad_p_immersion(trefoil(), 0.0)
        assert centers.shape == (3, 3)
        assert (centers == trefoil().evaluate(0.0)).all()

    def test_check_detects(self):
        f = circle()
        G = GdsMap(ones((2, 2)), construct_bad_p_immersion(f, 0.0))
        report = immersion_check(G, f, grid=256)
        assert report.verdict is Verdict.RANK_DROP
        assert report.sigma_min < 1e-12


################################################################################
## INJECTIVITY
################################################################################
COLLIDING_PAIRS = [
    (circle(), 0.5, 2.0),
    (circle(m=3), 0.0, pi),
    (trefoil(), 0.5, 3.0),
    (figure_eight(), 0.5, 2.0),
    (cusp_curve(), -0.5, 0.8),
    (torus_surface(m=5), (0.3, 1.0), (2.0, 4.0)),
]
COLLIDING_IDS = [f"{f.name}-{f.ambient_dim}" for f, _, _ in COLLIDING_PAIRS]


class TestBadInjectivity:
    """Test central points forcing a collision."""

    @mark.parametrize("seed", range(10))
    @mark.parametrize("f, q1, q2", COLLIDING_PAIRS, ids=COLLIDING_IDS)
    def test_exact_collision(self, f, q1, q2, seed):
        A = default_rng(seed).normal(size=(f.ambient_dim, f.ambient_dim))
        G = GdsMap(A, construct_bad_p_injectivity(f, q1, q2))
        assert image_gap(G, f, q1, q2) < 1e-10 * problem_scale(A)

    @mark.slow
    @mark.parametrize("seed", range(10))
    @mark.parametrize("f, q1, q2", COLLIDING_PAIRS, ids=COLLIDING_IDS)
    def test_check_detects(self, f, q1, q2, seed):
        A = default_rng(seed).normal(size=(f.ambient_dim, f.ambient_dim))
        G = GdsMap(A, construct_bad_p_injectivity(f, q1, q2))
        report = injectivity_check(G, f)
        assert report.verdict is Verdict.COLLISION
        assert report.image_gap < 1e-10 * report.scale
        assert report.separation >= report.exclusion * (1 - 1e-9)

    def test_check_detects_circle(self):
        f = circle(m=3)
        G = GdsMap(eye(3) + 1, construct_bad_p_injectivity(f, 0.0, pi))
        report = injectivity_check(G, f, grid=512)
        assert report.verdict is Verdict.COLLISION
        assert report.image_gap < 1e-10 * report.scale

    def test_check_detects_torus(self):
        f = torus_surface(m=5)
        A = default_rng(0).normal(size=(5, 5))
        G = GdsMap(A, construct_bad_p_injectivity(f, (0.3, 1.0), (2.0, 4.0)))
        report = injectivity_check(G, f)
        assert report.verdict is Verdict.COLLISION
        assert report.image_gap < 1e-10 * report.scale

    def test_same_image(self):
        with raises(ValueError, match="same image"):
            construct_bad_p_injectivity(circle(), 0.0, 2 * pi)

    @mark.parametrize("seed", range(5))
    def test_min_norm(self, seed):
        rng = default_rng(seed)
        A = rng.normal(size=(3, 3))
        base = rng.normal(size=(3, 3))
        centers = construct_bad_p_injectivity_min_norm(trefoil(), A, 0.5, 3.0, base)
        assert image_gap(GdsMap(A, centers), trefoil(), 0.5, 3.0) < 1e-12
        midpoint = construct_bad_p_injectivity(trefoil(), 0.5, 3.0)
        assert norm(centers - base) <= norm(midpoint - base) + 1e-12

    def test_min_norm_row_normals(self):
        f = trefoil()
        A = default_rng(3).normal(size=(3, 3))
        base = default_rng(4).normal(size=(3, 3))
        centers = construct_bad_p_injectivity_min_norm(f, A, 0.5, 3.0, base)
        w = A * (f.evaluate(0.5) - f.evaluate(3.0))
        residual = centers - base
        # each correction is parallel to its row normal
        cross = einsum("ij,ij->i", residual, w) ** 2 - einsum("ij,ij->i", residual, residual) * (
            einsum("ij,ij->i", w, w)
        )
        assert abs(cross).max() < 1e-9

    def test_min_norm_shapes(self):
        with raises(DimensionError, match="Coefficient"):
            construct_bad_p_injectivity_min_norm(trefoil(), ones((2, 2)), 0.5, 3.0)
        with raises(DimensionError, match="Base"):
            construct_bad_p_injectivity_min_norm(trefoil(), ones((3, 3)), 0.5, 3.0, ones((3, 2)))
