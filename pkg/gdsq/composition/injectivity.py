# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Numerical injectivity check for ``G o f``.

Collisions are pairs ``(q, q')`` off the diagonal of the domain that the pair map sends
onto the diagonal of ``R^m x R^m``. The search minimizes the image gap over pairs whose
domain separation is at least an exclusion radius ``delta``:

1. screening: all grid pairs with separation ``>= delta`` are covered by nearest neighbor
   queries in image space (:class:`scipy.spatial.cKDTree`);
2. descent: screened pairs seed a projected descent with backtracking on the squared gap,
   using closed form Jacobians for the gradient. Seeds are ranked by image gap relative to
   separation, and half of them are reserved for pairs at least ``FAR_CELLS`` grid cells
   apart, so that neighboring pairs next to the diagonal cannot take every start.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy import ndarray
from scipy.spatial import cKDTree

from ..manifolds import ParamManifold
from ..maps import GdsMap
from ..utils.parallel import parallel_map
from .composition import composed_evaluate, composition_jacobian, require_composable
from .immersion import DEFAULT_RESOLUTION, FALLBACK_RESOLUTION
from .tolerances import DEFAULT_TOLERANCES, Tolerances, Verdict, problem_scale, three_way_verdict

logger = logging.getLogger(__name__)

DEFAULT_EXCLUSION: float = 1e-2
DEFAULT_STARTS: int = 8
MAX_ITERATIONS: int = 200
MAX_BACKTRACKS: int = 50
ARMIJO: float = 1e-4
SEPARATION_SLACK: float = 1e-12
CLUSTER_CELLS: int = 16
FAR_CELLS: int = 4
EXTRA_NEIGHBORS: int = 8
STALL_RATIO: float = 1e-12

LOCAL_INJECTIVITY_NOTE = (
    "Pairs closer than the exclusion radius {delta:g} in the domain metric are excluded "
    "from the search. On a compact domain, an immersion with positive sigma_min is "
    "injective on balls whose radius is controlled by sigma_min and the second derivative "
    "bound (inverse function theorem), so together with the immersion check the exclusion "
    "radius does not hide collisions once it is below that radius."
)


@dataclass(frozen=True)
class CollisionReport:
    """Result of :func:`injectivity_check`.

    Attributes:
        manifold: name of the source manifold.
        resolution: screening grid points per axis.
        q: first parameter of the best pair.
        q_prime: second parameter of the best pair.
        image_gap: ``||(G o f)(q) - (G o f)(q')||``.
        separation: domain distance of the pair, at least ``exclusion``.
        exclusion: exclusion radius ``delta``.
        grid_minimum: smallest screened gap (before descent).
        starts: number of descent starts.
        scale: problem scale multiplying the tolerances.
        tolerances: tolerances in use.
        verdict: injective, collision or inconclusive.
    """

    manifold: str
    resolution: tuple[int, ...]
    q: tuple[float, ...]
    q_prime: tuple[float, ...]
    image_gap: float
    separation: float
    exclusion: float
    grid_minimum: float
    starts: int
    scale: float
    tolerances: Tolerances
    verdict: Verdict

    @property
    def margin(self) -> float:
        """Distance of the reported minimum from a collision."""
        return self.image_gap

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation."""
        return {
            "check": "injectivity",
            "manifold": self.manifold,
            "resolution": list(self.resolution),
            "q": list(self.q),
            "q_prime": list(self.q_prime),
            "image_gap": self.image_gap,
            "separation": self.separation,
            "exclusion": self.exclusion,
            "grid_minimum": self.grid_minimum,
            "starts": self.starts,
            "scale": self.scale,
            "thresholds": {
                "collision_below": self.tolerances.collision * self.scale,
                "injective_above": self.tolerances.margin * self.scale,
            },
            "tolerances": self.tolerances.to_dict(),
            "verdict": self.verdict,
            "note": LOCAL_INJECTIVITY_NOTE.format(delta=self.exclusion),
        }


def injectivity_check(
    G: GdsMap,
    f: ParamManifold,
    exclusion: float = DEFAULT_EXCLUSION,
    starts: int = DEFAULT_STARTS,
    grid: int | Sequence[int] | None = None,
    tolerances: Tolerances | None = None,
    max_iterations: int = MAX_ITERATIONS,
    workers: int | None = None,
) -> CollisionReport:
    """Decide numerically whether ``G o f`` is injective.

    Args:
        G: equidimensional mapping on the ambient space of ``f``.
        f: source manifold.
        exclusion: exclusion radius ``delta`` in the domain metric.
        starts: number of screened pairs seeding the descent per parameter dimension.
        grid: screening points per axis, defaults to 4096 for curves and 128 for surfaces.
        tolerances: numerical tolerances.
        max_iterations: descent iteration cap per start.
        workers: thread count, see :func:`gdsq.utils.parallel.max_workers`.

    Returns:
        A :class:`CollisionReport` for the best pair found.

    Raises:
        ValueError: if ``exclusion`` is not positive or exceeds the domain diameter.
    """
    # pylint: disable=invalid-name,too-many-arguments,too-many-locals
    require_composable(G, f, "The injectivity check")
    domain = f.domain
    if not exclusion > 0:
        raise ValueError(f"Exclusion radius must be positive, received {exclusion}.")
    if exclusion > domain.diameter:
        raise ValueError(
            f"Exclusion radius {exclusion} exceeds the domain diameter {domain.diameter:.6g}."
        )
    if starts < 1:
        raise ValueError(f"Number of starts must be positive, received {starts}.")
    tolerances = tolerances or DEFAULT_TOLERANCES
    resolution = domain.resolution(
        DEFAULT_RESOLUTION.get(f.dim, FALLBACK_RESOLUTION) if grid is None else grid
    )

    points = domain.grid(resolution)
    images = composed_evaluate(G, f, points, validate=False)
    scale = problem_scale(G.coefficients, images)
    spacing = domain.spacing(resolution)
    pairs, gaps, separations = _screen(f, points, images, exclusion, spacing)
    if not len(pairs):
        raise ValueError(f"No grid pairs with separation >= {exclusion}, refine the grid.")
    grid_minimum = float(gaps[0])
    logger.debug("Screened %d candidate pairs of %s, best gap %.3e", len(pairs), f.name, gaps[0])

    cell = float(spacing.max())
    seeds = _select_seeds(
        f,
        points[pairs],
        gaps / separations,
        separations >= max(exclusion, FAR_CELLS * cell),
        starts * f.dim,
        CLUSTER_CELLS * cell,
    )
    results = parallel_map(
        lambda seed: _descend(G, f, seed[0], seed[1], exclusion, max_iterations),
        seeds,
        workers,
    )
    screened = _canonical(grid_minimum, points[pairs[0][0]], points[pairs[0][1]])
    gap, q, q_prime = min([screened, *results])
    separation = float(domain.separation(np.array(q), np.array(q_prime)))

    verdict = three_way_verdict(
        gap,
        tolerances.collision * scale,
        tolerances.margin * scale,
        Verdict.INJECTIVE,
        Verdict.COLLISION,
    )
    logger.info("Injectivity check on %s: %s (image_gap=%.3e)", f.name, verdict.value, gap)
    return CollisionReport(
        manifold=f.name,
        resolution=resolution,
        q=q,
        q_prime=q_prime,
        image_gap=gap,
        separation=separation,
        exclusion=float(exclusion),
        grid_minimum=grid_minimum,
        starts=len(seeds),
        scale=scale,
        tolerances=tolerances,
        verdict=verdict,
    )


################################################################################
## SCREENING
################################################################################
def _screen(
    f: ParamManifold, points: ndarray, images: ndarray, exclusion: float, spacing: ndarray
) -> tuple[ndarray, ndarray, ndarray]:
    """Grid pairs ``(i, j)`` with separation ``>= exclusion`` sorted by image gap.

    For every grid point its nearest admissible partner in image space is among the
    ``K + 1`` nearest neighbors, where ``K`` bounds the number of grid points within the
    exclusion radius (itself included). Another ``EXTRA_NEIGHBORS * 3**n`` neighbors keep
    partners on other sheets of the image among the candidates.

    Returns:
        Pairs, their image gaps and their domain separations.
    """
    within = int(np.prod(2 * np.floor(exclusion / spacing) + 1))
    k = min(within + 1 + EXTRA_NEIGHBORS * 3 ** len(spacing), len(points))
    distances, neighbors = cKDTree(images).query(images, k=k)
    rows = np.repeat(np.arange(len(points)), k)
    cols = neighbors.reshape(-1)
    gaps = distances.reshape(-1)
    separations = f.domain.separation(points[rows], points[cols])
    admissible = separations >= exclusion
    rows, cols = rows[admissible], cols[admissible]
    gaps, separations = gaps[admissible], separations[admissible]
    first, second = np.minimum(rows, cols), np.maximum(rows, cols)
    order = np.lexsort((second, first, gaps))
    first, second = first[order], second[order]
    gaps, separations = gaps[order], separations[order]
    _, unique = np.unique(np.stack([first, second], axis=-1), axis=0, return_index=True)
    unique = np.sort(unique)
    return np.stack([first[unique], second[unique]], axis=-1), gaps[unique], separations[unique]


def _select_seeds(
    f: ParamManifold,
    candidates: ndarray,
    relative_gaps: ndarray,
    far: ndarray,
    starts: int,
    radius: float,
) -> list[tuple[ndarray, ndarray]]:
    """Screened pairs seeding the descent, skipping pairs close to an already selected one.

    ``candidates`` holds the screened pairs sorted by image gap. Half of the starts go to the
    best ``far`` pairs, the rest to the best pairs by image gap relative to separation.
    """
    # pylint: disable=too-many-arguments
    seeds: list[tuple[ndarray, ndarray]] = []

    def take(order: Iterable[int], limit: int) -> None:
        for index in order:
            if len(seeds) >= limit:
                return
            q, q_prime = candidates[index]
            if not any(
                f.separation(q, s) <= radius and f.separation(q_prime, s_prime) <= radius
                for s, s_prime in seeds
            ):
                seeds.append((q, q_prime))

    take(np.flatnonzero(far), starts // 2)
    take(np.argsort(relative_gaps, kind="stable"), starts)
    take(range(len(candidates)), starts)
    return seeds


################################################################################
## DESCENT
################################################################################
def _descend(
    G: GdsMap,
    f: ParamManifold,
    q: ndarray,
    q_prime: ndarray,
    exclusion: float,
    max_iterations: int,
) -> tuple[float, tuple[float, ...], tuple[float, ...]]:
    """Projected descent with backtracking on ``phi = |F(q) - F(q')|^2 / 2``.

    The search direction is the least squares (Gauss-Newton) step of the residual
    linearization, falling back to steepest descent when it is not a descent direction.
    """
    # pylint: disable=invalid-name,too-many-locals
    n = f.dim
    residual = _residual(G, f, q, q_prime)
    phi = 0.5 * residual @ residual
    for _ in range(max_iterations):
        if phi == 0:
            break
        jacobian = np.hstack(
            [
                composition_jacobian(G, f, q, validate=False),
                -composition_jacobian(G, f, q_prime, validate=False),
            ]
        )
        gradient = jacobian.T @ residual
        if not np.any(gradient):
            break
        direction = -np.linalg.lstsq(jacobian, residual, rcond=None)[0]
        slope = gradient @ direction
        if not slope < 0:
            direction, slope = -gradient, -(gradient @ gradient)
        step, accepted = 1.0, False
        for _ in range(MAX_BACKTRACKS):
            candidate = _project(
                f, q + step * direction[:n], q_prime + step * direction[n:], exclusion
            )
            if candidate is not None:
                new_residual = _residual(G, f, *candidate)
                new_phi = 0.5 * new_residual @ new_residual
                if new_phi <= phi + ARMIJO * step * slope and new_phi < phi:
                    accepted = True
                    break
            step /= 2
        if not accepted:
            break
        stalled = phi - new_phi <= STALL_RATIO * phi
        (q, q_prime), residual, phi = candidate, new_residual, new_phi
        if stalled:
            break
    return _canonical(float(np.sqrt(2 * phi)), q, q_prime)


def _residual(G: GdsMap, f: ParamManifold, q: ndarray, q_prime: ndarray) -> ndarray:
    # pylint: disable=invalid-name
    return composed_evaluate(G, f, q, validate=False) - composed_evaluate(
        G, f, q_prime, validate=False
    )


def _project(
    f: ParamManifold, q: ndarray, q_prime: ndarray, exclusion: float
) -> tuple[ndarray, ndarray] | None:
    """Bring a pair back into the domain with separation at least ``exclusion``."""
    domain = f.domain
    q, q_prime = domain.clip(q), domain.clip(q_prime)
    if domain.separation(q, q_prime) >= exclusion:
        return q, q_prime
    difference = domain.difference(q, q_prime)
    norm = np.linalg.norm(difference)
    if norm == 0:
        return None
    middle = q_prime + difference / 2
    offset = difference / norm * exclusion * (1 + SEPARATION_SLACK) / 2
    q, q_prime = domain.clip(middle + offset), domain.clip(middle - offset)
    if domain.separation(q, q_prime) < exclusion:
        return None
    return q, q_prime


def _canonical(
    gap: float, q: ndarray, q_prime: ndarray
) -> tuple[float, tuple[float, ...], tuple[float, ...]]:
    """Order the pair lexicographically so equal pairs compare equal."""
    first, second = tuple(np.asarray(q).tolist()), tuple(np.asarray(q_prime).tolist())
    if second < first:
        first, second = second, first
    return gap, first, second
