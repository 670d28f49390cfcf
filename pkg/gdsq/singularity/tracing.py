# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Tracing the singular set ``det JG = 0`` of a planar mapping.

Seeds are the sign changes of ``lambda = det JG`` along the edges of a coarse grid over
the window (as in marching squares). Each seed is corrected onto the curve and continued
in both directions by a predictor along the unit tangent followed by Newton corrector
steps along the gradient, that is orthogonal to the tangent. Polylines end at the window
boundary or when they close up.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy import ndarray

from ..composition.tolerances import DEFAULT_TOLERANCES, Tolerances
from ..maps import GdsMap
from ..utils.linalg import kernel_vector
from .planar import (
    ConicCoefficients,
    SingularPointType,
    classify_singular_point,
    conic_coefficients,
    require_planar,
)

logger = logging.getLogger(__name__)

Window = tuple[tuple[float, float], tuple[float, float]]

DEFAULT_STEP: float = 1e-2
DEFAULT_GRID: int = 64
WINDOW_MARGIN: float = 3.0
CORRECTOR_TOLERANCE: float = 1e-10
MAX_NEWTON_STEPS: int = 50
MAX_STEP_HALVINGS: int = 8
MAX_VERTICES: int = 200_000
BISECTION_STEPS: int = 60
CUSP_RESOLUTION: float = 1e-3


@dataclass(frozen=True)
class SingularCurve:
    """Traced singular set of a planar mapping.

    Attributes:
        components: polylines of shape ``(k, 2)``.
        classes: per vertex classification, one tuple per component.
        closed: whether each polyline closes up.
        conic: coefficients of ``det JG``.
        window: ``((x1_lo, x1_hi), (x2_lo, x2_hi))``.
        step: continuation step.
        scale: largest ``|det JG|`` on the seeding grid (at least one).
        tolerances: tolerances in use.
    """

    components: tuple[ndarray, ...]
    classes: tuple[tuple[SingularPointType, ...], ...]
    closed: tuple[bool, ...]
    conic: ConicCoefficients
    window: Window
    step: float
    scale: float
    tolerances: Tolerances

    @property
    def is_empty(self) -> bool:
        """Whether no singular point was found in the window."""
        return not self.components

    @property
    def vertices(self) -> ndarray:
        """All vertices stacked into shape ``(N, 2)``."""
        if self.is_empty:
            return np.empty((0, 2))
        return np.concatenate(self.components)

    @property
    def vertex_classes(self) -> list[SingularPointType]:
        """Classification of :attr:`vertices`."""
        return [label for labels in self.classes for label in labels]

    def count(self, label: SingularPointType) -> int:
        """Number of vertices with the given classification."""
        return sum(1 for vertex_label in self.vertex_classes if vertex_label is label)

    @property
    def cusps(self) -> ndarray:
        """Vertices classified as cusps."""
        mask = np.array([label is SingularPointType.CUSP for label in self.vertex_classes])
        return self.vertices[mask] if mask.size else np.empty((0, 2))

    def rows(self) -> list[tuple[float, float, str]]:
        """CSV rows ``(x1, x2, class)``."""
        return [
            (float(x1), float(x2), label.value)
            for (x1, x2), label in zip(self.vertices, self.vertex_classes)
        ]

    def to_dict(self) -> dict[str, Any]:
        """JSON compatible summary (vertices are exported as CSV)."""
        return {
            "conic": self.conic.to_dict(),
            "rectangular_hyperbola": self.conic.is_rectangular_hyperbola,
            "window": [list(bounds) for bounds in self.window],
            "step": self.step,
            "scale": self.scale,
            "counts": {label.value: self.count(label) for label in SingularPointType},
            "cusps": self.cusps.tolist(),
            "components": [
                {
                    "vertices": len(component),
                    "closed": closed,
                    "start": component[0].tolist(),
                    "end": component[-1].tolist(),
                }
                for component, closed in zip(self.components, self.closed)
            ],
            "tolerances": self.tolerances.to_dict(),
        }


def trace_singular_curve(
    G: GdsMap,
    window: Sequence[Sequence[float]] | None = None,
    step: float = DEFAULT_STEP,
    tolerances: Tolerances | None = None,
    grid: int = DEFAULT_GRID,
) -> SingularCurve:
    """Trace and classify ``det JG = 0`` inside a window.

    Args:
        G: planar mapping.
        window: ``((x1_lo, x1_hi), (x2_lo, x2_hi))``, defaults to the bounding box of the
            central points enlarged by three units.
        step: continuation step.
        tolerances: classification tolerances.
        grid: points per axis of the seeding grid.

    Returns:
        A :class:`SingularCurve`, empty if no sign change is found.
    """
    # pylint: disable=invalid-name,too-many-locals
    require_planar(G, "Singular curve tracing")
    if not step > 0:
        raise ValueError(f"Continuation step must be positive, received {step}.")
    if grid < 2:
        raise ValueError(f"Seeding grid needs at least 2 points per axis, received {grid}.")
    tolerances = tolerances or DEFAULT_TOLERANCES
    window = _validate_window(G, window)
    conic = conic_coefficients(G)

    mesh = np.meshgrid(*(np.linspace(lo, hi, grid) for lo, hi in window), indexing="ij")
    nodes = np.stack(mesh, axis=-1)
    values = conic.evaluate(nodes)
    scale = max(1.0, float(np.abs(values).max()))
    tolerance = CORRECTOR_TOLERANCE * scale

    seeds = []
    for seed in _sign_change_seeds(nodes, values):
        corrected = _correct(conic, seed, tolerance)
        if corrected is not None and _inside(window, corrected):
            seeds.append(corrected)
    seeds = sorted(seeds, key=lambda point: tuple(point.tolist()))
    logger.debug("Found %d seeds on a %dx%d grid", len(seeds), grid, grid)

    components: list[ndarray] = []
    unresolved: list[set[int]] = []
    closed: list[bool] = []
    for seed in seeds:
        if components and _distance_to(np.concatenate(components), seed) < 2 * step:
            continue
        polyline, is_closed = _trace_branch(conic, seed, window, step, tolerance)
        vertices, marked = _locate_cusps(G, conic, polyline, step, tolerance, tolerances)
        components.append(vertices)
        unresolved.append(marked)
        closed.append(is_closed)

    classes = tuple(
        tuple(
            SingularPointType.UNRESOLVED
            if index in marked
            else classify_singular_point(G, vertex, tolerances, conic, scale)
            for index, vertex in enumerate(component)
        )
        for component, marked in zip(components, unresolved)
    )
    curve = SingularCurve(
        components=tuple(components),
        classes=classes,
        closed=tuple(closed),
        conic=conic,
        window=window,
        step=float(step),
        scale=scale,
        tolerances=tolerances,
    )
    logger.info(
        "Traced %d components: %d folds, %d cusps",
        len(components),
        curve.count(SingularPointType.FOLD),
        curve.count(SingularPointType.CUSP),
    )
    return curve


################################################################################
## SEEDING
################################################################################
def _validate_window(G: GdsMap, window: Sequence[Sequence[float]] | None) -> Window:
    # pylint: disable=invalid-name
    if window is None:
        lower = G.centers.min(axis=0) - WINDOW_MARGIN
        upper = G.centers.max(axis=0) + WINDOW_MARGIN
        return ((float(lower[0]), float(upper[0])), (float(lower[1]), float(upper[1])))
    bounds = np.asarray(window, dtype=float)
    if bounds.shape != (2, 2):
        raise ValueError(f"Window must be ((x1_lo, x1_hi), (x2_lo, x2_hi)), got {window!r}.")
    if not np.isfinite(bounds).all() or np.any(bounds[:, 0] >= bounds[:, 1]):
        raise ValueError(f"Window bounds must be finite with lo < hi, got {window!r}.")
    return ((float(bounds[0, 0]), float(bounds[0, 1])), (float(bounds[1, 0]), float(bounds[1, 1])))


def _sign_change_seeds(nodes: ndarray, values: ndarray) -> list[ndarray]:
    """Linear interpolation of the zero on every grid edge with a sign change."""
    seeds = list(nodes[values == 0])
    for axis in (0, 1):
        head = [slice(None), slice(None)]
        tail = [slice(None), slice(None)]
        head[axis], tail[axis] = slice(None, -1), slice(1, None)
        v0, v1 = values[tuple(head)], values[tuple(tail)]
        p0, p1 = nodes[tuple(head)], nodes[tuple(tail)]
        crossing = v0 * v1 < 0
        fraction = v0[crossing] / (v0[crossing] - v1[crossing])
        seeds.extend(p0[crossing] + fraction[:, None] * (p1[crossing] - p0[crossing]))
    return seeds


def _inside(window: Window, x: ndarray) -> bool:
    (x1_lo, x1_hi), (x2_lo, x2_hi) = window
    return x1_lo <= x[0] <= x1_hi and x2_lo <= x[1] <= x2_hi


def _distance_to(points: ndarray, x: ndarray) -> float:
    return float(np.min(np.linalg.norm(points - x, axis=-1)))


################################################################################
## CONTINUATION
################################################################################
def _correct(conic: ConicCoefficients, x: ndarray, tolerance: float) -> ndarray | None:
    """Newton steps along the gradient onto ``lambda = 0``, ``None`` on failure."""
    for _ in range(MAX_NEWTON_STEPS):
        value = conic.evaluate(x)
        if abs(value) < tolerance:
            return x
        gradient = conic.gradient(x)
        squared = gradient @ gradient
        if squared == 0:
            return None
        x = x - value * gradient / squared
    return x if abs(conic.evaluate(x)) < tolerance else None


def _tangent(conic: ConicCoefficients, x: ndarray) -> ndarray | None:
    gradient = conic.gradient(x)
    norm = np.linalg.norm(gradient)
    if norm == 0:
        return None
    return np.array([-gradient[1], gradient[0]]) / norm


def _trace_branch(
    conic: ConicCoefficients, seed: ndarray, window: Window, step: float, tolerance: float
) -> tuple[ndarray, bool]:
    forward, closed = _march(conic, seed, 1.0, window, step, tolerance)
    if closed:
        return np.array([seed, *forward]), True
    backward, _ = _march(conic, seed, -1.0, window, step, tolerance)
    return np.array([*backward[::-1], seed, *forward]), False


def _march(
    conic: ConicCoefficients,
    start: ndarray,
    orientation: float,
    window: Window,
    step: float,
    tolerance: float,
) -> tuple[list[ndarray], bool]:
    """Predictor-corrector continuation from ``start`` in one direction."""
    # pylint: disable=too-many-arguments
    points: list[ndarray] = []
    tangent = _tangent(conic, start)
    if tangent is None:
        return points, False
    direction, x = orientation * tangent, start
    while len(points) < MAX_VERTICES:
        tangent = _tangent(conic, x)
        if tangent is None:
            break
        if tangent @ direction < 0:
            tangent = -tangent
        following = _advance(conic, x, tangent, step, tolerance)
        if following is None or not _inside(window, following):
            break
        if len(points) > 2 and np.linalg.norm(following - start) < step:
            return points, True
        points.append(following)
        direction, x = tangent, following
    return points, False


def _advance(
    conic: ConicCoefficients, x: ndarray, tangent: ndarray, step: float, tolerance: float
) -> ndarray | None:
    """One predictor-corrector step, halving the predictor until the corrector succeeds."""
    size = step
    for _ in range(MAX_STEP_HALVINGS):
        candidate = _correct(conic, x + size * tangent, tolerance)
        if candidate is not None:
            offset = candidate - x
            if np.linalg.norm(offset) <= 2 * step and offset @ tangent > 0:
                return candidate
        size /= 2
    return None


################################################################################
## CUSPS
################################################################################
def _locate_cusps(
    G: GdsMap,
    conic: ConicCoefficients,
    polyline: ndarray,
    step: float,
    tolerance: float,
    tolerances: Tolerances,
) -> tuple[ndarray, set[int]]:
    """Insert a vertex at every sign change of ``grad lambda . eta`` along the polyline.

    The kernel direction ``eta`` is oriented continuously along the polyline. Vertices
    closer than a quarter step to an inserted point are dropped. A sign change whose
    bisection does not converge marks the vertex closing it as unresolved.

    Returns:
        The vertices and the indices of the unresolved ones.
    """
    # pylint: disable=invalid-name,too-many-arguments,too-many-locals
    if len(polyline) < 2:
        return polyline, set()
    etas = []
    for vertex in polyline:
        eta = kernel_vector(G.jacobian(vertex))
        if etas and eta @ etas[-1] < 0:
            eta = -eta
        etas.append(eta)
    psi = np.array([_psi(conic, vertex, eta) for vertex, eta in zip(polyline, etas)])

    vertices: list[ndarray] = [polyline[0]]
    unresolved: set[int] = set()
    for k in range(len(polyline) - 1):
        if psi[k] * psi[k + 1] < 0:
            cusp = _bisect(
                G, conic, polyline[k], polyline[k + 1], etas[k], psi[k], tolerance, tolerances
            )
            if cusp is None:
                unresolved.add(len(vertices))
            else:
                if len(vertices) > 1 and np.linalg.norm(vertices[-1] - cusp) < step / 4:
                    unresolved.discard(len(vertices) - 1)
                    vertices.pop()
                vertices.append(cusp)
                if k + 2 < len(polyline) and np.linalg.norm(polyline[k + 1] - cusp) < step / 4:
                    continue
        vertices.append(polyline[k + 1])
    return np.array(vertices), unresolved


def _psi(conic: ConicCoefficients, x: ndarray, eta: ndarray) -> float:
    gradient = conic.gradient(x)
    norm = np.linalg.norm(gradient)
    return float(gradient @ eta / norm) if norm else 0.0


def _bisect(
    G: GdsMap,
    conic: ConicCoefficients,
    start: ndarray,
    end: ndarray,
    eta: ndarray,
    psi_start: float,
    tolerance: float,
    tolerances: Tolerances,
) -> ndarray | None:
    """Bisection for the zero of ``psi`` between two consecutive vertices.

    Stops early once ``|psi|`` drops below the cusp resolution. Returns ``None`` if the
    corrector fails, or if ``|psi|`` still exceeds the classification tolerance after
    ``BISECTION_STEPS`` halvings (a jump of the kernel direction rather than a zero).
    """
    # pylint: disable=invalid-name,too-many-arguments
    low, high = 0.0, 1.0
    point, psi = start, psi_start
    for _ in range(BISECTION_STEPS):
        middle = (low + high) / 2
        point = _correct(conic, start + middle * (end - start), tolerance)
        if point is None:
            return None
        oriented = kernel_vector(G.jacobian(point))
        if oriented @ eta < 0:
            oriented = -oriented
        psi = _psi(conic, point, oriented)
        if abs(psi) <= CUSP_RESOLUTION * tolerances.classification:
            return point
        if np.sign(psi) == np.sign(psi_start):
            low = middle
        else:
            high = middle
    if abs(psi) <= tolerances.classification:
        return point
    logger.debug("Cusp bisection between %s and %s did not converge", start, end)
    return None
