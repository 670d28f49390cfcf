# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Every equidimensional mapping is singular and fails to be injective.

Singularity: the i-th row of the Jacobian ``2 a_ij (x_j - p_ij)`` vanishes at the
central point ``p_i``. Non-injectivity: for a center ``c`` the ``m - 1`` equations
``G_i(p_c + y) = G_i(p_c - y)``, ``i != c``, are linear and homogeneous in ``y``,

    sum_j a_ij (p_cj - p_ij) y_j = 0,

and the c-th equation holds by reflection symmetry, so any null vector ``y`` gives the
collision ``G(p_c + y) = G(p_c - y)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np
from numpy import ndarray
from scipy.linalg import null_space
from scipy.optimize import root

from ..composition.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..exceptions import CollisionNotFoundError
from ..maps import GdsMap
from ..utils.linalg import numerical_rank, singular_values

logger = logging.getLogger(__name__)

MIN_SEPARATION: float = 1e-3
DEFAULT_ATTEMPTS: int = 20


################################################################################
## SINGULARITY
################################################################################
def det_jacobian(G: GdsMap, x: Any) -> Any:
    """Determinant of the closed form Jacobian (exactly zero on a zero row)."""
    # pylint: disable=invalid-name
    G.require_equidimensional("The Jacobian determinant")
    jacobian = G.jacobian(x)
    zero_row = ~np.any(jacobian, axis=-1).all(axis=-1)
    det = np.where(zero_row, 0.0, np.linalg.det(jacobian))
    return float(det) if det.ndim == 0 else det


@dataclass(frozen=True)
class CenterCheck:
    """Jacobian of ``G`` at the central point ``p_i`` (1-based ``index``)."""

    index: int
    dim: int
    row_zero: bool
    rank: int
    sigma_min: float
    sigma_max: float

    @property
    def passed(self) -> bool:
        """Row ``i`` vanishes and the rank is at most ``m - 1``."""
        return self.row_zero and self.rank <= self.dim - 1

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation."""
        return {
            "index": self.index,
            "row_zero": self.row_zero,
            "rank": self.rank,
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class SingularityReport:
    """Per center checks of the Jacobian at the central points."""

    dim: int
    centers: tuple[CenterCheck, ...]

    @property
    def passed(self) -> bool:
        """Whether every central point is a singular point."""
        return all(check.passed for check in self.centers)

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation."""
        return {
            "m": self.dim,
            "centers": [check.to_dict() for check in self.centers],
            "passed": self.passed,
        }


def verify_lemma_singular(G: GdsMap, tolerances: Tolerances | None = None) -> SingularityReport:
    """Check that the Jacobian at each central point has a zero row and is rank deficient."""
    # pylint: disable=invalid-name
    G.require_equidimensional("The singularity check")
    tolerances = tolerances or DEFAULT_TOLERANCES
    checks = []
    for i, center in enumerate(G.centers):
        jacobian = G.jacobian(center)
        sigma = singular_values(jacobian)
        checks.append(
            CenterCheck(
                index=i + 1,
                dim=G.dim,
                row_zero=not np.any(jacobian[i]),
                rank=numerical_rank(jacobian, tolerances.numerical_rank),
                sigma_min=float(sigma[-1]),
                sigma_max=float(sigma[0]),
            )
        )
    report = SingularityReport(G.dim, tuple(checks))
    logger.info("Singularity check on %d centers: passed=%s", G.dim, report.passed)
    return report


################################################################################
## NON-INJECTIVITY
################################################################################
class Collision(NamedTuple):
    """Pair of distinct points with (numerically) equal images."""

    x: ndarray
    x_prime: ndarray
    gap: float

    @property
    def separation(self) -> float:
        """Euclidean distance between the two points."""
        return float(np.linalg.norm(self.x - self.x_prime))

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation."""
        return {
            "x": self.x.tolist(),
            "x_prime": self.x_prime.tolist(),
            "gap": self.gap,
            "separation": self.separation,
        }


def find_collision(
    G: GdsMap,
    attempts: int = DEFAULT_ATTEMPTS,
    seed: int | np.random.Generator | None = None,
    tolerances: Tolerances | None = None,
) -> Collision:
    """Find ``x != x'`` with ``G(x) = G(x')``.

    Attempts cycle through the centers and polish ``x'`` with a Newton solve of
    ``G(x') = G(x)`` started at the reflection ``2 p_c - x``. The first round (and every
    even attempt afterwards) takes ``x = p_c + s y`` from a null vector ``y`` of the
    reflection equations, for which the reflected start is already exact; the remaining
    attempts start from random ``x``.

    Args:
        G: equidimensional mapping.
        attempts: maximum number of attempts.
        seed: seed or generator for the random choices.
        tolerances: the collision tolerance bounds the accepted gap.

    Raises:
        CollisionNotFoundError: if no attempt produced an accepted pair.
    """
    # pylint: disable=invalid-name
    G.require_equidimensional("The collision search")
    if attempts < 1:
        raise ValueError(f"Number of attempts must be positive, received {attempts}.")
    tolerances = tolerances or DEFAULT_TOLERANCES
    rng = np.random.default_rng(seed)
    length = 1.0 + float(np.abs(G.centers).max())
    for attempt in range(attempts):
        c = attempt % G.dim
        center = G.centers[c]
        if attempt < G.dim or attempt % 2 == 0:
            direction = _reflection_direction(G, c, rng)
            x = center + rng.uniform(0.5, 2.0) * length * direction
        else:
            x = center + length * rng.normal(size=G.dim)
        x_prime = _polish(G, x, 2 * center - x)
        gap = float(np.linalg.norm(G.evaluate(x) - G.evaluate(x_prime)))
        separation = float(np.linalg.norm(x - x_prime))
        logger.debug(
            "Attempt %d (center %d): gap %.3e, separation %.3e",
            attempt + 1,
            c + 1,
            gap,
            separation,
        )
        if gap < tolerances.collision and separation > MIN_SEPARATION:
            return Collision(x, x_prime, gap)
    raise CollisionNotFoundError(f"No collision found after {attempts} attempts.")


def _reflection_direction(G: GdsMap, c: int, rng: np.random.Generator) -> ndarray:
    """Unit null vector of the reflection equations for center ``c``."""
    # pylint: disable=invalid-name
    rows = np.delete(np.arange(G.dim), c)
    system = G.coefficients[rows] * (G.centers[c] - G.centers[rows])
    basis = null_space(system) if len(rows) else np.eye(G.dim)
    if basis.shape[1] == 0:
        basis = np.linalg.svd(system)[2][-1:].T
    direction = basis @ rng.normal(size=basis.shape[1])
    norm = np.linalg.norm(direction)
    return basis[:, 0] if norm == 0 else direction / norm


def _polish(G: GdsMap, x: ndarray, start: ndarray) -> ndarray:
    """Newton solve of ``G(x') = G(x)`` from ``start``, never worse than the start."""
    # pylint: disable=invalid-name
    target = G.evaluate(x)

    def residual(z: ndarray) -> ndarray:
        return G.evaluate(z) - target

    solution = root(residual, start, jac=G.jacobian, method="hybr")
    candidate = solution.x
    if not np.all(np.isfinite(candidate)):
        return start
    if np.linalg.norm(candidate - x) <= MIN_SEPARATION:
        return start
    if np.linalg.norm(residual(candidate)) < np.linalg.norm(residual(start)):
        return candidate
    return start
