# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""JSON manifold descriptors."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

from ..exceptions import ConstructionError
from .domain import ParamDomain
from .expression import expression_manifold
from .manifold import ParamManifold
from .specimens import circle, cusp_curve, figure_eight, torus_surface, trefoil

MANIFOLD_LIBRARY = {
    "circle": circle,
    "trefoil": trefoil,
    "figure-eight": figure_eight,
    "cusp": cusp_curve,
    "torus": torus_surface,
}

SPECIMEN_PARAMETERS: dict[str, tuple[str, ...]] = {
    "circle": ("radius", "center", "m"),
    "trefoil": (),
    "figure-eight": (),
    "cusp": (),
    "torus": ("m", "R", "r"),
}


def manifold_from_descriptor(descriptor: Mapping[str, Any] | str) -> ParamManifold:
    """Build a manifold from ``{"kind": ..., <kind specific parameters>}``.

    A bare string is shorthand for ``{"kind": <string>}``. The ``"expr"`` kind takes
    ``"coordinates"`` (expression strings), ``"domain"`` (``lower``, ``upper`` and
    optional ``periodic`` lists) and optional claim flags.
    """
    if isinstance(descriptor, str):
        descriptor = {"kind": descriptor}
    if not isinstance(descriptor, Mapping) or "kind" not in descriptor:
        raise ConstructionError(f"Invalid manifold descriptor {descriptor!r}, missing 'kind'.")
    kind = descriptor["kind"]
    options = {key: value for key, value in descriptor.items() if key != "kind"}
    if kind == "expr":
        return _expression_from_options(options)
    if kind not in MANIFOLD_LIBRARY:
        raise ConstructionError(
            f"Unknown manifold kind {kind!r}, "
            f"expected one of {sorted(MANIFOLD_LIBRARY) + ['expr']}."
        )
    unknown = sorted(set(options) - set(SPECIMEN_PARAMETERS[kind]))
    if unknown:
        raise ConstructionError(f"Unexpected parameters {unknown} for manifold kind {kind!r}.")
    return MANIFOLD_LIBRARY[kind](**options)


def _expression_from_options(options: dict[str, Any]) -> ParamManifold:
    try:
        coordinates, domain = options["coordinates"], options["domain"]
        domain = ParamDomain(domain["lower"], domain["upper"], domain.get("periodic"))
    except KeyError as error:
        raise ConstructionError(f"Expression manifold is missing {error.args[0]!r}.") from error
    return expression_manifold(
        coordinates,
        domain,
        claims_immersion=options.get("claims_immersion", False),
        claims_injective=options.get("claims_injective", False),
    )
