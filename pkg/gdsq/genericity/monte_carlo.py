# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Monte Carlo experiments over random central points with fixed coefficients."""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any
from warnings import warn

import numpy as np

from ..composition import Tolerances, Verdict, immersion_check, injectivity_check
from ..composition.immersion import DEFAULT_REFINE_ROUNDS
from ..composition.injectivity import DEFAULT_EXCLUSION, DEFAULT_STARTS
from ..exceptions import DimensionError, HypothesisError, HypothesisWarning
from ..manifolds import ParamManifold
from ..maps import GdsMap
from ..utils.parallel import parallel_map
from ..utils.typing import as_real_array, isint
from .sampling import (
    Distribution,
    GaussianDistribution,
    distribution_from_descriptor,
    sample_central_points,
    trial_rng,
)
from .transversality import collision_hypothesis_holds, immersion_hypothesis_holds

logger = logging.getLogger(__name__)

DEFAULT_TRIALS: int = 1000
QUANTILES: tuple[float, ...] = (0.0, 0.01, 0.05, 0.5, 0.95, 1.0)


@dataclass(frozen=True)
class MonteCarloSummary:
    """Per-trial margins and verdicts of a genericity experiment.

    The margin is the smallest singular value for immersion experiments and the minimum
    image gap for injectivity experiments.
    """

    theorem: str
    manifold: str
    coefficients: tuple[tuple[float, ...], ...]
    trials: int
    seed: int
    distribution: Mapping[str, Any]
    margins: tuple[float, ...]
    verdicts: tuple[Verdict, ...]
    hypothesis_holds: bool
    overridden: bool

    def __post_init__(self) -> None:
        if len(self.margins) != self.trials or len(self.verdicts) != self.trials:
            raise ValueError("Margins and verdicts must be recorded for every trial.")

    @property
    def failures(self) -> int:
        """Trials with a rank drop or collision."""
        return sum(verdict.failed for verdict in self.verdicts)

    @property
    def passes(self) -> int:
        """Trials with an immersion or injective verdict."""
        return sum(verdict.passed for verdict in self.verdicts)

    @property
    def inconclusive(self) -> int:
        """Trials with a margin between the decision thresholds."""
        return self.verdicts.count(Verdict.INCONCLUSIVE)

    @property
    def min_margin(self) -> float:
        """Smallest margin over all trials."""
        return min(self.margins)

    @property
    def quantiles(self) -> dict[str, float]:
        """Empirical margin quantiles keyed by level."""
        values = np.quantile(self.margins, QUANTILES)
        return {f"{level:g}": float(value) for level, value in zip(QUANTILES, values)}

    @property
    def verdict(self) -> Verdict:
        """Aggregate outcome: failed if any trial failed, inconclusive if any was."""
        if self.failures:
            return Verdict.RANK_DROP if self.theorem == "immersion" else Verdict.COLLISION
        if self.inconclusive:
            return Verdict.INCONCLUSIVE
        return Verdict.IMMERSION if self.theorem == "immersion" else Verdict.INJECTIVE

    def rows(self) -> list[tuple[int, float, str]]:
        """CSV rows ``(trial, margin, verdict)``."""
        return [
            (index, margin, verdict.value)
            for index, (margin, verdict) in enumerate(zip(self.margins, self.verdicts))
        ]

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation."""
        return {
            "theorem": self.theorem,
            "manifold": self.manifold,
            "A": [list(row) for row in self.coefficients],
            "trials": self.trials,
            "seed": self.seed,
            "distribution": dict(self.distribution),
            "hypothesis_holds": self.hypothesis_holds,
            "overridden": self.overridden,
            "failures": self.failures,
            "passes": self.passes,
            "inconclusive": self.inconclusive,
            "min_margin": self.min_margin,
            "quantiles": self.quantiles,
            "verdict": self.verdict,
            "margins": list(self.margins),
        }


################################################################################
## EXPERIMENTS
################################################################################
def mc_genericity_immersion(
    f: ParamManifold,
    coefficients: Any,
    trials: int = DEFAULT_TRIALS,
    distribution: Mapping[str, Any] | Distribution | None = None,
    seed: int = 0,
    override: bool = False,
    grid: int | Sequence[int] | None = None,
    refine_rounds: int = DEFAULT_REFINE_ROUNDS,
    tolerances: Tolerances | None = None,
    workers: int | None = None,
) -> MonteCarloSummary:
    """Sample central points and run :func:`immersion_check` on each composition.

    Raises:
        HypothesisError: if ``m < 2n`` and ``override`` is not set.
    """
    # pylint: disable=too-many-arguments
    hypothesis = immersion_hypothesis_holds(f.dim, f.ambient_dim)
    _require_hypothesis(hypothesis, override, f"m >= 2n, got n={f.dim}, m={f.ambient_dim}")

    def check(G: GdsMap) -> tuple[float, Verdict]:
        # pylint: disable=invalid-name
        report = immersion_check(G, f, grid, refine_rounds, tolerances, workers=1)
        return report.sigma_min, report.verdict

    return _experiment(
        "immersion",
        f,
        coefficients,
        trials,
        distribution,
        seed,
        hypothesis,
        override,
        check,
        workers,
    )


def mc_genericity_injectivity(
    f: ParamManifold,
    coefficients: Any,
    trials: int = DEFAULT_TRIALS,
    distribution: Mapping[str, Any] | Distribution | None = None,
    seed: int = 0,
    override: bool = False,
    exclusion: float = DEFAULT_EXCLUSION,
    starts: int = DEFAULT_STARTS,
    grid: int | Sequence[int] | None = None,
    tolerances: Tolerances | None = None,
    workers: int | None = None,
) -> MonteCarloSummary:
    """Sample central points and run :func:`injectivity_check` on each composition.

    Raises:
        HypothesisError: if ``m < 2n + 1`` and ``override`` is not set.
    """
    # pylint: disable=too-many-arguments
    hypothesis = collision_hypothesis_holds(f.dim, f.ambient_dim)
    _require_hypothesis(hypothesis, override, f"m >= 2n + 1, got n={f.dim}, m={f.ambient_dim}")

    def check(G: GdsMap) -> tuple[float, Verdict]:
        # pylint: disable=invalid-name
        report = injectivity_check(G, f, exclusion, starts, grid, tolerances, workers=1)
        return report.image_gap, report.verdict

    return _experiment(
        "injectivity",
        f,
        coefficients,
        trials,
        distribution,
        seed,
        hypothesis,
        override,
        check,
        workers,
    )


################################################################################
## AUXILIARY
################################################################################
def _require_hypothesis(holds: bool, override: bool, statement: str) -> None:
    if holds:
        return
    if not override:
        raise HypothesisError(f"Dimension hypothesis violated ({statement}).")
    warn(
        f"Dimension hypothesis violated ({statement}), failures carry no guarantee.",
        HypothesisWarning,
        stacklevel=3,
    )


def _experiment(
    theorem: str,
    f: ParamManifold,
    coefficients: Any,
    trials: int,
    distribution: Mapping[str, Any] | Distribution | None,
    seed: int,
    hypothesis: bool,
    override: bool,
    check: Callable[[GdsMap], tuple[float, Verdict]],
    workers: int | None,
) -> MonteCarloSummary:
    # pylint: disable=too-many-arguments
    if not isint(trials) or trials < 1:
        raise ValueError(f"Number of trials must be a positive integer, received {trials!r}.")
    if not isint(seed):
        raise TypeError(f"Seed must be an integer, received {seed!r}.")
    m = f.ambient_dim
    coefficients = as_real_array(coefficients, name="coefficient matrix", ndim=2)
    if coefficients.shape != (m, m):
        raise DimensionError(f"Coefficient matrix must have shape ({m}, {m}).")
    distribution = distribution_from_descriptor(distribution or GaussianDistribution())

    def trial(index: int) -> tuple[float, Verdict]:
        centers = sample_central_points(m, distribution, trial_rng(seed, index))
        return check(GdsMap(coefficients, centers))

    logger.info("Running %d %s trials on %s (seed %d)", trials, theorem, f.name, seed)
    results = parallel_map(trial, range(trials), workers)
    summary = MonteCarloSummary(
        theorem=theorem,
        manifold=f.name,
        coefficients=tuple(tuple(row) for row in coefficients.tolist()),
        trials=trials,
        seed=int(seed),
        distribution=distribution.to_dict(),
        margins=tuple(float(margin) for margin, _ in results),
        verdicts=tuple(verdict for _, verdict in results),
        hypothesis_holds=hypothesis,
        overridden=override and not hypothesis,
    )
    logger.info(
        "%s experiment on %s: %d failures, %d inconclusive, min margin %.3e",
        theorem.capitalize(),
        f.name,
        summary.failures,
        summary.inconclusive,
        summary.min_margin,
    )
    return summary
