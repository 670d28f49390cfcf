# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Numerical immersion check for ``G o f``."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from math import ceil
from typing import Any

import numpy as np
from numpy import ndarray

from ..exceptions import DimensionError
from ..manifolds import ParamManifold
from ..maps import GdsMap
from ..utils.linalg import smallest_singular_values
from ..utils.parallel import parallel_map
from .composition import composed_evaluate, composition_jacobian, require_composable
from .tolerances import DEFAULT_TOLERANCES, Tolerances, Verdict, problem_scale, three_way_verdict

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION: dict[int, int] = {1: 4096, 2: 128}
FALLBACK_RESOLUTION: int = 16
DEFAULT_REFINE_ROUNDS: int = 16
REFINE_FRACTION: float = 0.01
REFINE_POINTS: int = 9
REFINE_SHRINK: float = 4.0
CHUNK_SIZE: int = 4096

COMPACT_DOMAIN_NOTE = (
    "Checks cover the compact parameter domain only; the grid scan is followed by local "
    "refinement around the lowest screened values."
)


@dataclass(frozen=True)
class RankReport:
    """Result of :func:`immersion_check`.

    Attributes:
        manifold: name of the source manifold.
        resolution: grid points per axis.
        sigma_min: smallest ``sigma_n`` of the composition Jacobian over all evaluations.
        witness: parameter attaining ``sigma_min``.
        grid_minimum: smallest value on the screening grid (before refinement).
        refined: whether local refinement ran.
        refine_rounds: number of refinement rounds per candidate.
        scale: problem scale multiplying the tolerances.
        tolerances: tolerances in use.
        verdict: immersion, rank-drop or inconclusive.
    """

    manifold: str
    resolution: tuple[int, ...]
    sigma_min: float
    witness: tuple[float, ...]
    grid_minimum: float
    refined: bool
    refine_rounds: int
    scale: float
    tolerances: Tolerances
    verdict: Verdict
    grid_points: ndarray = field(repr=False, compare=False)
    grid_sigma: ndarray = field(repr=False, compare=False)

    @property
    def margin(self) -> float:
        """Distance of the reported minimum from rank deficiency."""
        return self.sigma_min

    def sigma_grid(self) -> list[tuple[float, ...]]:
        """Rows ``(t_1, ..., t_n, sigma)`` of the screening grid."""
        return [
            (*map(float, point), float(sigma))
            for point, sigma in zip(self.grid_points, self.grid_sigma)
        ]

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation (grid values excluded)."""
        return {
            "check": "immersion",
            "manifold": self.manifold,
            "resolution": list(self.resolution),
            "sigma_min": self.sigma_min,
            "witness": list(self.witness),
            "grid_minimum": self.grid_minimum,
            "refined": self.refined,
            "refine_rounds": self.refine_rounds,
            "scale": self.scale,
            "thresholds": {
                "rank_drop_below": self.tolerances.rank * self.scale,
                "immersion_above": self.tolerances.margin * self.scale,
            },
            "tolerances": self.tolerances.to_dict(),
            "verdict": self.verdict,
            "note": COMPACT_DOMAIN_NOTE,
        }


def immersion_check(
    G: GdsMap,
    f: ParamManifold,
    grid: int | Sequence[int] | None = None,
    refine_rounds: int = DEFAULT_REFINE_ROUNDS,
    tolerances: Tolerances | None = None,
    workers: int | None = None,
) -> RankReport:
    """Decide numerically whether ``G o f`` is an immersion.

    The smallest singular value ``sigma_n`` of the composition Jacobian is scanned on a
    grid; around the lowest one percent of grid points (at least one) the minimum is
    refined by repeated local subdivision, shrinking the local window fourfold per round.

    Args:
        G: equidimensional mapping on the ambient space of ``f``.
        f: source manifold with ``n <= m``.
        grid: points per axis, defaults to 4096 for curves and 128 for surfaces.
        refine_rounds: local subdivision rounds per candidate.
        tolerances: numerical tolerances.
        workers: thread count, see :func:`gdsq.utils.parallel.max_workers`.

    Returns:
        A :class:`RankReport`.
    """
    # pylint: disable=invalid-name,too-many-locals
    require_composable(G, f, "The immersion check")
    if f.dim > G.dim:
        raise DimensionError(
            f"Immersions require n <= m, got n={f.dim} and m={G.dim}."
        )
    if refine_rounds < 0:
        raise ValueError(f"Refinement rounds must be non-negative, received {refine_rounds}.")
    tolerances = tolerances or DEFAULT_TOLERANCES
    resolution = f.domain.resolution(_default_resolution(f) if grid is None else grid)

    points = f.domain.grid(resolution)
    sigma = _sigma(G, f, points, workers)
    scale = problem_scale(G.coefficients, composed_evaluate(G, f, points, validate=False))
    grid_index = int(np.argmin(sigma))
    grid_minimum = float(sigma[grid_index])
    logger.debug(
        "Screened %d parameters of %s, grid minimum %.3e", len(points), f.name, grid_minimum
    )

    best = (grid_minimum, tuple(points[grid_index].tolist()))
    if refine_rounds:
        count = max(1, ceil(REFINE_FRACTION * len(points)))
        candidates = np.argsort(sigma, kind="stable")[:count]
        spacing = f.domain.spacing(resolution)
        refined = parallel_map(
            lambda index: _refine(G, f, points[index], spacing, refine_rounds),
            candidates,
            workers,
        )
        best = min([best, *refined])
        logger.debug("Refined %d candidates, minimum %.3e", count, best[0])

    sigma_min, witness = best
    verdict = three_way_verdict(
        sigma_min,
        tolerances.rank * scale,
        tolerances.margin * scale,
        Verdict.IMMERSION,
        Verdict.RANK_DROP,
    )
    logger.info("Immersion check on %s: %s (sigma_min=%.3e)", f.name, verdict.value, sigma_min)
    return RankReport(
        manifold=f.name,
        resolution=resolution,
        sigma_min=sigma_min,
        witness=witness,
        grid_minimum=grid_minimum,
        refined=bool(refine_rounds),
        refine_rounds=refine_rounds,
        scale=scale,
        tolerances=tolerances,
        verdict=verdict,
        grid_points=points,
        grid_sigma=sigma,
    )


################################################################################
## AUXILIARY
################################################################################
def _default_resolution(f: ParamManifold) -> int:
    return DEFAULT_RESOLUTION.get(f.dim, FALLBACK_RESOLUTION)


def _sigma(G: GdsMap, f: ParamManifold, points: ndarray, workers: int | None) -> ndarray:
    """Smallest singular values of the composition Jacobian, evaluated in chunks."""
    # pylint: disable=invalid-name
    chunks = [points[start : start + CHUNK_SIZE] for start in range(0, len(points), CHUNK_SIZE)]
    values = parallel_map(
        lambda chunk: smallest_singular_values(composition_jacobian(G, f, chunk, validate=False)),
        chunks,
        workers,
    )
    return np.concatenate(values)


def _refine(
    G: GdsMap, f: ParamManifold, center: ndarray, spacing: ndarray, rounds: int
) -> tuple[float, tuple[float, ...]]:
    """Local subdivision search for the minimum of ``sigma_n`` around ``center``."""
    # pylint: disable=invalid-name
    best_value, best_point = np.inf, center
    width = np.array(spacing, dtype=float)
    for _ in range(rounds):
        offsets = [np.linspace(-h, h, REFINE_POINTS) for h in width]
        mesh = np.meshgrid(*offsets, indexing="ij")
        local = f.domain.clip(best_point + np.stack([m.reshape(-1) for m in mesh], axis=-1))
        sigma = smallest_singular_values(composition_jacobian(G, f, local, validate=False))
        index = _lexicographic_argmin(sigma, local)
        if sigma[index] <= best_value:
            best_value, best_point = float(sigma[index]), local[index]
        width = width / REFINE_SHRINK
    return best_value, tuple(best_point.tolist())


def _lexicographic_argmin(values: ndarray, points: ndarray) -> int:
    """Index of the minimum value, ties broken by the lexicographically smallest point."""
    ties = np.flatnonzero(values == values.min())
    if len(ties) == 1:
        return int(ties[0])
    order = np.lexsort(points[ties].T[::-1])
    return int(ties[order[0]])
