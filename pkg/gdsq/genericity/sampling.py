# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Absolutely continuous distributions of central points."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy import ndarray

from ..utils.typing import isint, isreal


class Distribution(ABC):
    """Distribution of central point coordinates (i.i.d. per coordinate)."""

    kind: str = ""

    @abstractmethod
    def sample(self, rng: np.random.Generator, shape: tuple[int, ...]) -> ndarray:
        """Draw samples of the given shape."""

    @abstractmethod
    def to_dict(self) -> dict[str, Any]:
        """JSON compatible descriptor."""


@dataclass(frozen=True)
class GaussianDistribution(Distribution):
    """Normal distribution ``N(mean, std^2)``."""

    mean: float = 0.0
    std: float = 1.0
    kind = "gaussian"

    def __post_init__(self) -> None:
        if not isreal(self.mean) or not isreal(self.std):
            raise TypeError("Gaussian parameters must be real numbers.")
        if self.std <= 0:
            raise ValueError(f"Standard deviation must be positive, received {self.std}.")

    def sample(self, rng: np.random.Generator, shape: tuple[int, ...]) -> ndarray:
        return rng.normal(self.mean, self.std, size=shape)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "mean": float(self.mean), "std": float(self.std)}


@dataclass(frozen=True)
class UniformDistribution(Distribution):
    """Uniform distribution on the box ``[low, high]^m``."""

    low: float = -1.0
    high: float = 1.0
    kind = "uniform"

    def __post_init__(self) -> None:
        if not isreal(self.low) or not isreal(self.high):
            raise TypeError("Uniform bounds must be real numbers.")
        if self.low >= self.high:
            raise ValueError(f"Invalid uniform bounds [{self.low}, {self.high}].")

    def sample(self, rng: np.random.Generator, shape: tuple[int, ...]) -> ndarray:
        return rng.uniform(self.low, self.high, size=shape)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "low": float(self.low), "high": float(self.high)}


DISTRIBUTION_LIBRARY = {
    cls.kind: cls
    for cls in (
        GaussianDistribution,
        UniformDistribution,
    )
}


def distribution_from_descriptor(descriptor: Mapping[str, Any] | Distribution) -> Distribution:
    """Build a distribution from ``{"kind": "gaussian", "mean": .., "std": ..}`` or
    ``{"kind": "uniform", "low": .., "high": ..}``.

    Raises:
        ValueError: on malformed descriptors.
    """
    if isinstance(descriptor, Distribution):
        return descriptor
    if not isinstance(descriptor, Mapping):
        raise ValueError(f"Invalid distribution descriptor {descriptor!r}, expected mapping.")
    options = dict(descriptor)
    kind = options.pop("kind", None)
    if kind not in DISTRIBUTION_LIBRARY:
        raise ValueError(
            f"Unknown distribution kind {kind!r}, expected one of {sorted(DISTRIBUTION_LIBRARY)}."
        )
    try:
        return DISTRIBUTION_LIBRARY[kind](**options)
    except TypeError as error:
        raise ValueError(f"Malformed {kind} distribution descriptor: {error}") from error


def sample_central_points(
    m: int, distribution: Mapping[str, Any] | Distribution, rng: np.random.Generator
) -> ndarray:
    """Draw ``m`` central points of dimension ``m``."""
    if not isint(m) or m < 1:
        raise ValueError(f"Dimension must be a positive integer, received {m!r}.")
    return distribution_from_descriptor(distribution).sample(rng, (m, m))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent random stream for the trial ``index`` of an experiment."""
    return np.random.default_rng([seed, index])
