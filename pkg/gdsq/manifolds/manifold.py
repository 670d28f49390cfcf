# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Parametrized manifolds ``f: D -> R^m``."""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

import numpy as np
from numpy import ndarray

from ..exceptions import DimensionError
from ..utils.dual import jacobian_fwd
from ..utils.typing import as_point, isint
from .domain import ParamDomain

Coordinates = Callable[[Any], Any]
Derivatives = Callable[[ndarray], ndarray]


class ParamManifold:
    """Manifold given by a single global parametrization.

    Args:
        name: human readable identifier.
        domain: parameter domain ``D`` of dimension ``n``.
        ambient_dim: ambient dimension ``m``.
        coordinates: evaluator mapping points of shape ``(..., n)`` to ``(..., m)``. It must
            accept dual numbers (see :mod:`gdsq.utils.dual`) for automatic differentiation.
        derivatives: closed form Jacobian of shape ``(..., m, n)``. Defaults to forward-mode
            automatic differentiation of ``coordinates``.
        claims_immersion: whether the parametrization is known to be an immersion.
        claims_injective: whether the parametrization is known to be injective.
        parameters: constructor parameters, echoed in reports.
    """

    def __init__(
        self,
        name: str,
        domain: ParamDomain,
        ambient_dim: int,
        coordinates: Coordinates,
        derivatives: Derivatives | None = None,
        claims_immersion: bool = False,
        claims_injective: bool = False,
        parameters: dict[str, Any] | None = None,
    ) -> None:
        self._set_name(name)
        self._set_domain(domain)
        self._set_ambient_dim(ambient_dim)
        self._coordinates: Coordinates = coordinates
        self._derivatives: Derivatives | None = derivatives
        self.claims_immersion: bool = bool(claims_immersion)
        self.claims_injective: bool = bool(claims_injective)
        self.parameters: dict[str, Any] = dict(parameters or {})
        self._validate_dimensions()

    def __repr__(self) -> str:
        return f"ParamManifold(name={self.name!r}, n={self.dim}, m={self.ambient_dim})"

    ################################################################################
    ## PROPERTIES
    ################################################################################
    @property
    def name(self) -> str:
        """Manifold name."""
        return self._name

    @property
    def domain(self) -> ParamDomain:
        """Parameter domain."""
        return self._domain

    @property
    def dim(self) -> int:
        """Source dimension ``n``."""
        return self._domain.dim

    @property
    def ambient_dim(self) -> int:
        """Ambient dimension ``m``."""
        return self._ambient_dim

    def _set_name(self, name: str) -> None:
        if not isinstance(name, str):
            raise TypeError(f"Invalid manifold name, expected str but got {type(name)}.")
        self._name: str = name

    def _set_domain(self, domain: ParamDomain) -> None:
        if not isinstance(domain, ParamDomain):
            raise TypeError(f"Invalid domain, expected ParamDomain but got {type(domain)}.")
        self._domain: ParamDomain = domain

    def _set_ambient_dim(self, ambient_dim: int) -> None:
        if not isint(ambient_dim):
            raise TypeError(f"Invalid ambient dimension, expected int but got {ambient_dim!r}.")
        if ambient_dim < 1:
            raise ValueError(f"Ambient dimension must be positive, received {ambient_dim}.")
        self._ambient_dim: int = int(ambient_dim)

    ################################################################################
    ## API
    ################################################################################
    def evaluate(self, q: Any, validate: bool = True) -> ndarray:
        """Evaluate ``f(q)`` for one point or a stack of shape ``(..., n)``."""
        q = self._domain.validate(q) if validate else as_point(q, self.dim)
        return np.asarray(self._coordinates(q), dtype=float)

    def jacobian(self, q: Any, validate: bool = True) -> ndarray:
        """Jacobian ``Jf(q)`` of shape ``(..., m, n)``."""
        q = self._domain.validate(q) if validate else as_point(q, self.dim)
        if self._derivatives is None:
            return jacobian_fwd(self._coordinates, q)
        return np.asarray(self._derivatives(q), dtype=float)

    def jacobian_ad(self, q: Any, validate: bool = True) -> ndarray:
        """Jacobian by dual-number differentiation of the evaluator."""
        q = self._domain.validate(q) if validate else as_point(q, self.dim)
        return jacobian_fwd(self._coordinates, q)

    def coordinates(self, q: Any) -> Any:
        """Raw evaluator, generic over arrays and dual numbers (no validation)."""
        return self._coordinates(q)

    def separation(self, q: Any, q_prime: Any) -> Any:
        """Domain metric between parameter points."""
        return self._domain.separation(q, q_prime)

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible description."""
        return {
            "name": self.name,
            "n": self.dim,
            "m": self.ambient_dim,
            "parameters": self.parameters,
            "domain": self.domain.to_dict(),
            "claims_immersion": self.claims_immersion,
            "claims_injective": self.claims_injective,
        }

    ################################################################################
    ## VALIDATION
    ################################################################################
    def _validate_dimensions(self) -> None:
        center = (self._domain.lower + self._domain.upper) / 2
        value = np.asarray(self._coordinates(center))
        if value.shape != (self.ambient_dim,):
            raise DimensionError(
                f"Evaluator returned shape {value.shape}, expected ({self.ambient_dim},)."
            )
        if self._derivatives is not None:
            jacobian = np.asarray(self._derivatives(center))
            if jacobian.shape != (self.ambient_dim, self.dim):
                raise DimensionError(
                    f"Differentiator returned shape {jacobian.shape}, "
                    f"expected ({self.ambient_dim}, {self.dim})."
                )


################################################################################
## FUNCTIONS
################################################################################
def eval_manifold(f: ParamManifold, q: Any) -> ndarray:
    """Evaluate ``f(q)`` after periodic wrapping.

    Raises:
        DomainError: if ``q`` is outside a non-periodic axis range.
    """
    return f.evaluate(q)


def domain_separation(f: ParamManifold, q: Any, q_prime: Any) -> float:
    """Distance between parameter points with per-axis periodic wrapping."""
    return f.separation(q, q_prime)
