# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Singularities and collisions of equidimensional mappings."""

from .lemmas import (
    CenterCheck,
    Collision,
    SingularityReport,
    det_jacobian,
    find_collision,
    verify_lemma_singular,
)
from .planar import (
    ConicCoefficients,
    SingularPointType,
    classify_singular_point,
    conic_coefficients,
    is_singular_point,
    kernel_direction,
)
from .tracing import SingularCurve, trace_singular_curve

__all__ = [
    "det_jacobian",
    "verify_lemma_singular",
    "find_collision",
    "CenterCheck",
    "SingularityReport",
    "Collision",
    "ConicCoefficients",
    "conic_coefficients",
    "SingularPointType",
    "classify_singular_point",
    "is_singular_point",
    "kernel_direction",
    "SingularCurve",
    "trace_singular_curve",
]
