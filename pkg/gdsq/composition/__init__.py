# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Compositions with parametrized manifolds, immersion and injectivity checks."""

from .composition import (
    composed_evaluate,
    composition_jacobian,
    composition_jacobian_ad,
    gamma_pair,
    image_gap,
    require_composable,
)
from .embedding import EmbeddingReport, injective_immersion_check
from .immersion import RankReport, immersion_check
from .injectivity import CollisionReport, injectivity_check
from .tolerances import DEFAULT_TOLERANCES, Tolerances, Verdict, problem_scale

__all__ = [
    "composed_evaluate",
    "composition_jacobian",
    "composition_jacobian_ad",
    "gamma_pair",
    "image_gap",
    "require_composable",
    "RankReport",
    "immersion_check",
    "CollisionReport",
    "injectivity_check",
    "EmbeddingReport",
    "injective_immersion_check",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "Verdict",
    "problem_scale",
]
