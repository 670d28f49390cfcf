# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Combined injective immersion (embedding) check."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any

from ..manifolds import ParamManifold
from ..maps import GdsMap
from .immersion import DEFAULT_REFINE_ROUNDS, RankReport, immersion_check
from .injectivity import DEFAULT_EXCLUSION, DEFAULT_STARTS, CollisionReport, injectivity_check
from .tolerances import Tolerances, Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingReport:
    """Pair of immersion and injectivity reports.

    On a compact domain an injective immersion is an embedding, so passing both checks
    makes ``G o f`` an embedding candidate. Unpacks as ``(rank, collision)``.
    """

    rank: RankReport
    collision: CollisionReport

    def __iter__(self) -> Iterator[Any]:
        return iter((self.rank, self.collision))

    @property
    def verdict(self) -> Verdict:
        """Embedding candidate if both pass, not an embedding if either fails."""
        verdicts = (self.rank.verdict, self.collision.verdict)
        if all(v.passed for v in verdicts):
            return Verdict.EMBEDDING_CANDIDATE
        if any(v.failed for v in verdicts):
            return Verdict.NOT_EMBEDDING
        return Verdict.INCONCLUSIVE

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation."""
        return {
            "check": "embedding",
            "immersion": self.rank.to_dict(),
            "injectivity": self.collision.to_dict(),
            "verdict": self.verdict,
        }


def injective_immersion_check(
    G: GdsMap,
    f: ParamManifold,
    grid: int | Sequence[int] | None = None,
    refine_rounds: int = DEFAULT_REFINE_ROUNDS,
    exclusion: float = DEFAULT_EXCLUSION,
    starts: int = DEFAULT_STARTS,
    tolerances: Tolerances | None = None,
    workers: int | None = None,
) -> EmbeddingReport:
    """Run :func:`immersion_check` and :func:`injectivity_check` on ``G o f``."""
    # pylint: disable=invalid-name,too-many-arguments
    rank = immersion_check(G, f, grid, refine_rounds, tolerances, workers)
    collision = injectivity_check(
        G, f, exclusion, starts, grid, tolerances, workers=workers
    )
    report = EmbeddingReport(rank, collision)
    logger.info("Embedding check on %s: %s", f.name, report.verdict.value)
    return report
