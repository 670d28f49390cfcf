# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Dimension counts behind the genericity statements.

A linear map ``R^n -> R^m`` of corank ``k`` lies in a submanifold of codimension
``k (m - n + k)``; the bad set of central points has measure zero as soon as every such
codimension exceeds ``n``. For injectivity the pair map on ``N x N`` minus the diagonal
(dimension ``2n``) must miss the diagonal of ``R^m x R^m`` (codimension ``m``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy import ndarray
from scipy.linalg import block_diag

from ..composition import require_composable
from ..composition.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..manifolds import ParamManifold
from ..maps import GdsMap
from ..utils.linalg import numerical_rank, singular_values
from ..utils.typing import isint


def rank_drop_codimension(n: int, m: int, k: int) -> int:
    """Codimension ``k (m - n + k)`` of the corank ``k`` matrices among ``m x n`` ones."""
    for name, value in (("n", n), ("m", m), ("k", k)):
        if not isint(value) or value < 1:
            raise ValueError(f"Invalid {name}={value!r}, expected positive integer.")
    if k > min(n, m):
        raise ValueError(f"Corank k={k} exceeds min(n, m)={min(n, m)}.")
    return k * (m - n + k)


def immersion_hypothesis_holds(n: int, m: int) -> bool:
    """Whether every corank locus has codimension above ``n`` (equivalently ``m >= 2n``)."""
    if n > m:
        return False
    return all(rank_drop_codimension(n, m, k) > n for k in range(1, n + 1))


def collision_hypothesis_holds(n: int, m: int) -> bool:
    """Whether the diagonal codimension ``m`` exceeds the pair space dimension ``2n``."""
    return m > 2 * n


def pair_transversality_matrix(G: GdsMap, f: ParamManifold, q: Any, q_prime: Any) -> ndarray:
    """Derivative of the pair map with respect to translations and central points.

    Rows ``[E_m | blockdiag(b_1, ..., b_m)]`` and ``[E_m | blockdiag(b'_1, ..., b'_m)]`` with
    ``b_i = -2 (a_i1 (f_1(q) - p_i1), ..., a_im (f_m(q) - p_im))`` and ``b'_i`` at ``q'``.
    Shape ``(2m, m + m^2)``.
    """
    # pylint: disable=invalid-name
    require_composable(G, f, "The pair transversality matrix")
    identity = np.eye(G.dim)
    blocks = []
    for point in (f.evaluate(q), f.evaluate(q_prime)):
        b = -2 * G.coefficients * (point - G.centers)
        blocks.append(np.hstack([identity, block_diag(*b)]))
    return np.vstack(blocks)


@dataclass(frozen=True)
class TransversalityReport:
    """Numerical rank of :func:`pair_transversality_matrix`."""

    rank: int
    expected_rank: int
    sigma_min: float

    @property
    def passed(self) -> bool:
        """Whether the matrix has full row rank."""
        return self.rank == self.expected_rank

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible representation."""
        return {
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "sigma_min": self.sigma_min,
            "passed": self.passed,
        }


def pair_transversality_report(
    G: GdsMap,
    f: ParamManifold,
    q: Any,
    q_prime: Any,
    tolerances: Tolerances | None = None,
) -> TransversalityReport:
    """Rank of the pair transversality matrix, full (``2m``) whenever ``f(q) != f(q')``."""
    # pylint: disable=invalid-name
    tolerances = tolerances or DEFAULT_TOLERANCES
    matrix = pair_transversality_matrix(G, f, q, q_prime)
    return TransversalityReport(
        rank=numerical_rank(matrix, tolerances.numerical_rank),
        expected_rank=2 * G.dim,
        sigma_min=float(singular_values(matrix)[-1]),
    )
