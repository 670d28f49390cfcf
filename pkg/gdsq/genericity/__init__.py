# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Genericity experiments and explicit members of the bad set of central points."""

from .bad_set import (
    construct_bad_p_immersion,
    construct_bad_p_injectivity,
    construct_bad_p_injectivity_min_norm,
)
from .monte_carlo import MonteCarloSummary, mc_genericity_immersion, mc_genericity_injectivity
from .sampling import (
    DISTRIBUTION_LIBRARY,
    Distribution,
    GaussianDistribution,
    UniformDistribution,
    distribution_from_descriptor,
    sample_central_points,
    trial_rng,
)
from .transversality import (
    TransversalityReport,
    collision_hypothesis_holds,
    immersion_hypothesis_holds,
    pair_transversality_matrix,
    pair_transversality_report,
    rank_drop_codimension,
)

__all__ = [
    "Distribution",
    "GaussianDistribution",
    "UniformDistribution",
    "DISTRIBUTION_LIBRARY",
    "distribution_from_descriptor",
    "sample_central_points",
    "trial_rng",
    "MonteCarloSummary",
    "mc_genericity_immersion",
    "mc_genericity_injectivity",
    "construct_bad_p_immersion",
    "construct_bad_p_injectivity",
    "construct_bad_p_injectivity_min_norm",
    "rank_drop_codimension",
    "immersion_hypothesis_holds",
    "collision_hypothesis_holds",
    "pair_transversality_matrix",
    "pair_transversality_report",
    "TransversalityReport",
]
