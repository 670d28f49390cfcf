# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Numerical tolerances and three-way verdicts."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from typing import Any

import numpy as np

from ..utils.typing import isreal


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances; check thresholds are multiplied by the problem scale.

    Args:
        rank: rank-drop threshold on the smallest singular value.
        collision: collision threshold on the image gap.
        margin: pass threshold for both checks (values in between are inconclusive).
        trace: singular curve threshold on ``|det JG|``.
        classification: fold and cusp criteria threshold.
        numerical_rank: relative cutoff for the numerical rank of a matrix.
    """

    rank: float = 1e-8
    collision: float = 1e-8
    margin: float = 1e-5
    trace: float = 1e-8
    classification: float = 1e-6
    numerical_rank: float = 1e-10

    def __post_init__(self) -> None:
        for field in fields(self):
            value = getattr(self, field.name)
            if not isreal(value):
                raise TypeError(f"Tolerance {field.name!r} must be a real number, got {value!r}.")
            if value <= 0:
                raise ValueError(f"Tolerance {field.name!r} must be positive, got {value}.")
        if self.rank > self.margin or self.collision > self.margin:
            raise ValueError("Failure tolerances must not exceed the pass margin.")

    def replicate(self, **overrides: Any) -> Tolerances:
        """Copy with the given fields replaced (``None`` values are ignored)."""
        return replace(self, **{key: val for key, val in overrides.items() if val is not None})

    def to_dict(self) -> dict[str, float]:
        """Tolerance echo for reports."""
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


class Verdict(str, Enum):
    """Outcome of a numerical check."""

    IMMERSION = "immersion"
    RANK_DROP = "rank-drop"
    INJECTIVE = "injective"
    COLLISION = "collision"
    EMBEDDING_CANDIDATE = "embedding-candidate"
    NOT_EMBEDDING = "not-embedding"
    INCONCLUSIVE = "inconclusive"

    @property
    def passed(self) -> bool:
        """Whether the verdict is a positive outcome."""
        return self in (Verdict.IMMERSION, Verdict.INJECTIVE, Verdict.EMBEDDING_CANDIDATE)

    @property
    def failed(self) -> bool:
        """Whether the verdict is a negative outcome."""
        return self in (Verdict.RANK_DROP, Verdict.COLLISION, Verdict.NOT_EMBEDDING)


def three_way_verdict(
    value: float,
    fail_below: float,
    pass_above: float,
    passing: Verdict,
    failing: Verdict,
) -> Verdict:
    """Fail below the first threshold, pass above the second, else inconclusive."""
    if value < fail_below:
        return failing
    if value > pass_above:
        return passing
    return Verdict.INCONCLUSIVE


def problem_scale(coefficients: np.ndarray, image: np.ndarray | None = None) -> float:
    """Scale ``max(1, max |a_ij|, bounding box diagonal of the sampled image)``."""
    scale = max(1.0, float(np.abs(coefficients).max()))
    if image is not None and np.size(image):
        image = np.asarray(image, dtype=float).reshape(-1, np.shape(image)[-1])
        scale = max(scale, float(np.linalg.norm(image.max(axis=0) - image.min(axis=0))))
    return scale
