# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Exceptions and warnings raised throughout the package.

All errors derive from the builtin exception that a caller would naturally catch
(e.g. ``ValueError``) so that plain ``except ValueError`` clauses keep working.
"""

from __future__ import annotations


################################################################################
## ERRORS
################################################################################
class GdsqError(Exception):
    """Base class for all package errors."""


class ConstructionError(GdsqError, ValueError):
    """Invalid data for building a map or manifold.

    Args:
        message: human readable description.
        index: 1-based index of the offending entry (e.g. ``(i, j)``), if any.
    """

    def __init__(self, message: str, index: tuple[int, ...] | None = None) -> None:
        super().__init__(message)
        self.index: tuple[int, ...] | None = index


class DimensionError(GdsqError, ValueError):
    """Inconsistent dimensions between inputs."""


class DomainError(GdsqError, ValueError):
    """Parameter point outside of a (non-periodic) parameter domain."""


class HypothesisError(GdsqError, ValueError):
    """Dimension hypothesis of a genericity theorem not met."""


class CollisionNotFoundError(GdsqError, RuntimeError):
    """Collision search exhausted its attempts."""


class ConfigError(GdsqError, ValueError):
    """Invalid experiment configuration.

    Args:
        message: human readable description.
        path: JSON path to the offending field (e.g. ``"map.A[1][0]"``).
    """

    def __init__(self, message: str, path: str = "") -> None:
        super().__init__(f"{path}: {message}" if path else message)
        self.path: str = path


################################################################################
## WARNINGS
################################################################################
class ConditioningWarning(UserWarning):
    """Coefficient magnitudes spread over too many orders of magnitude."""


class HypothesisWarning(UserWarning):
    """Theorem hypothesis overridden; results carry no ground-truth claim."""
