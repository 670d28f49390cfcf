# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Parametrized manifolds library."""

from .descriptor import MANIFOLD_LIBRARY, manifold_from_descriptor
from .domain import ParamDomain
from .expression import expression_manifold
from .manifold import ParamManifold, domain_separation, eval_manifold
from .specimens import circle, cusp_curve, figure_eight, torus_surface, trefoil

__all__ = [
    "ParamDomain",
    "ParamManifold",
    "eval_manifold",
    "domain_separation",
    "circle",
    "trefoil",
    "figure_eight",
    "cusp_curve",
    "torus_surface",
    "expression_manifold",
    "manifold_from_descriptor",
    "MANIFOLD_LIBRARY",
]
