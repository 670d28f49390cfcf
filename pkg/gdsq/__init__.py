# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Numerical laboratory for generalized distance-squared mappings and their compositions
with parametrized manifolds."""

from .composition import (
    Tolerances,
    Verdict,
    composition_jacobian,
    immersion_check,
    injective_immersion_check,
    injectivity_check,
)
from .genericity import (
    construct_bad_p_immersion,
    construct_bad_p_injectivity,
    mc_genericity_immersion,
    mc_genericity_injectivity,
)
from .manifolds import MANIFOLD_LIBRARY, ParamManifold
from .maps import MAP_KIND_LIBRARY, GdsMap, new_gds_map
from .singularity import (
    classify_singular_point,
    find_collision,
    trace_singular_curve,
    verify_lemma_singular,
)

__copyright__ = "(C) Copyright gdsq developers 2024"
__version__ = "0.1.0"


__all__ = [
    "__copyright__",
    "__version__",
    "GdsMap",
    "new_gds_map",
    "MAP_KIND_LIBRARY",
    "ParamManifold",
    "MANIFOLD_LIBRARY",
    "Tolerances",
    "Verdict",
    "composition_jacobian",
    "immersion_check",
    "injectivity_check",
    "injective_immersion_check",
    "verify_lemma_singular",
    "find_collision",
    "classify_singular_point",
    "trace_singular_curve",
    "mc_genericity_immersion",
    "mc_genericity_injectivity",
    "construct_bad_p_immersion",
    "construct_bad_p_injectivity",
]
