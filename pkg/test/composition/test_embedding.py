# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

from dataclasses import replace

from numpy import eye
from numpy.random import default_rng
from pytest import mark

from gdsq.composition import EmbeddingReport, Verdict, injective_immersion_check
from gdsq.manifolds import circle, figure_eight
from gdsq.maps import distance_squared_map, random_gds_map


################################################################################
## AUXILIARY
################################################################################
def circle_report():
    return injective_immersion_check(distance_squared_map(eye(3)), circle(m=3), grid=512)


################################################################################
## TESTS
################################################################################
class TestInjectiveImmersionCheck:
    """Test combined embedding checks."""

    def test_circle_embedding(self):
        report = circle_report()
        assert isinstance(report, EmbeddingReport)
        assert report.rank.verdict is Verdict.IMMERSION
        assert report.collision.verdict is Verdict.INJECTIVE
        assert report.verdict is Verdict.EMBEDDING_CANDIDATE

    def test_unpacking(self):
        report = circle_report()
        rank, collision = report
        assert rank is report.rank
        assert collision is report.collision

    def test_figure_eight(self):
        G = random_gds_map(2, default_rng(0))
        report = injective_immersion_check(G, figure_eight(), grid=512)
        assert report.collision.verdict is Verdict.COLLISION
        assert report.verdict is Verdict.NOT_EMBEDDING

    def test_to_dict(self):
        description = circle_report().to_dict()
        assert description["check"] == "embedding"
        assert description["immersion"]["check"] == "immersion"
        assert description["injectivity"]["check"] == "injectivity"
        assert description["verdict"] is Verdict.EMBEDDING_CANDIDATE


@mark.parametrize(
    "rank, collision, expected",
    [
        (Verdict.IMMERSION, Verdict.INJECTIVE, Verdict.EMBEDDING_CANDIDATE),
        (Verdict.RANK_DROP, Verdict.INJECTIVE, Verdict.NOT_EMBEDDING),
        (Verdict.IMMERSION, Verdict.COLLISION, Verdict.NOT_EMBEDDING),
        (Verdict.RANK_DROP, Verdict.INCONCLUSIVE, Verdict.NOT_EMBEDDING),
        (Verdict.INCONCLUSIVE, Verdict.INJECTIVE, Verdict.INCONCLUSIVE),
        (Verdict.IMMERSION, Verdict.INCONCLUSIVE, Verdict.INCONCLUSIVE),
    ],
)
def test_embedding_verdict(rank, collision, expected):
    """Test the combination of partial verdicts."""
    report = circle_report()
    combined = EmbeddingReport(
        replace(report.rank, verdict=rank), replace(report.collision, verdict=collision)
    )
    assert combined.verdict is expected
