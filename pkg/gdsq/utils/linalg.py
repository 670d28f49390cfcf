# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Singular value based linear algebra helpers."""

from __future__ import annotations

import numpy as np
from numpy import ndarray

DEFAULT_RANK_TOLERANCE: float = 1e-10


def singular_values(matrices: ndarray) -> ndarray:
    """Singular values (descending) of a matrix or a stack of matrices."""
    return np.linalg.svd(np.asarray(matrices, dtype=float), compute_uv=False)


def smallest_singular_values(matrices: ndarray) -> ndarray:
    """Smallest of the ``min(rows, cols)`` singular values for each matrix in a stack.

    Single column matrices are handled through vector norms.
    """
    matrices = np.asarray(matrices, dtype=float)
    if matrices.shape[-1] == 1:
        return np.linalg.norm(matrices[..., 0], axis=-1)
    return singular_values(matrices)[..., -1]


def numerical_rank(matrix: ndarray, tolerance: float = DEFAULT_RANK_TOLERANCE) -> int:
    """Number of singular values exceeding ``tolerance * sigma_max``.

    A zero matrix has rank zero.
    """
    sigma = singular_values(matrix)
    if sigma.size == 0 or sigma[0] == 0:
        return 0
    return int(np.count_nonzero(sigma > tolerance * sigma[0]))


def kernel_vector(matrix: ndarray) -> ndarray:
    """Unit right singular vector for the smallest singular value."""
    _, _, vh = np.linalg.svd(np.asarray(matrix, dtype=float))
    return vh[-1]
