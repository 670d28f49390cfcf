# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Static SVG figures: traced singular curves and margin histograms."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from numpy import ndarray

from ..singularity import SingularCurve

WIDTH: int = 480
HEIGHT: int = 480
PADDING: int = 24
MARKER_SIZE: float = 6.0
HISTOGRAM_BINS: int = 30
MARGIN_FLOOR: float = 1e-20


def _header(width: int, height: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]


class _Frame:
    """Affine map from a data window onto the drawing area (y axis upwards)."""

    def __init__(self, window: Sequence[Sequence[float]]) -> None:
        (self.x_lo, self.x_hi), (self.y_lo, self.y_hi) = window

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        width, height = WIDTH - 2 * PADDING, HEIGHT - 2 * PADDING
        u = PADDING + width * (x - self.x_lo) / (self.x_hi - self.x_lo)
        v = HEIGHT - PADDING - height * (y - self.y_lo) / (self.y_hi - self.y_lo)
        return u, v

    def contains(self, x: float, y: float) -> bool:
        """Whether the data point lies inside the window."""
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi


def svg_singular_curve(curve: SingularCurve, centers: ndarray | None = None) -> str:
    """Render the traced singular set with its cusps (crosses) and central points (circles)."""
    frame = _Frame(curve.window)
    lines = _header(WIDTH, HEIGHT)
    lines.append(
        f'<rect x="{PADDING}" y="{PADDING}" width="{WIDTH - 2 * PADDING}" '
        f'height="{HEIGHT - 2 * PADDING}" fill="none" stroke="#999999"/>'
    )
    for component, closed in zip(curve.components, curve.closed):
        points = " ".join("{:.3f},{:.3f}".format(*frame(x, y)) for x, y in component)
        tag = "polygon" if closed else "polyline"
        lines.append(
            f'<{tag} class="fold" points="{points}" fill="none" stroke="#1f77b4" '
            'stroke-width="1.5"/>'
        )
    for x, y in [] if centers is None else np.asarray(centers):
        if frame.contains(x, y):
            u, v = frame(x, y)
            lines.append(
                f'<circle class="center" cx="{u:.3f}" cy="{v:.3f}" r="{MARKER_SIZE / 2}" '
                'fill="#2ca02c"/>'
            )
    for x, y in curve.cusps:
        u, v = frame(x, y)
        d = MARKER_SIZE
        lines.append(
            f'<path class="cusp" d="M {u - d:.3f} {v - d:.3f} L {u + d:.3f} {v + d:.3f} '
            f'M {u - d:.3f} {v + d:.3f} L {u + d:.3f} {v - d:.3f}" stroke="#d62728" '
            'stroke-width="2"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def svg_margin_histogram(margins: Sequence[float], bins: int = HISTOGRAM_BINS) -> str:
    """Render the histogram of ``log10`` margins (non-positive margins are floored)."""
    values = np.log10(np.maximum(np.asarray(margins, dtype=float), MARGIN_FLOOR))
    counts, edges = np.histogram(values, bins=bins)
    width, height = WIDTH - 2 * PADDING, HEIGHT - 2 * PADDING
    bar = width / bins
    peak = max(int(counts.max()), 1)
    lines = _header(WIDTH, HEIGHT)
    for index, count in enumerate(counts):
        top = height * count / peak
        lines.append(
            f'<rect class="bin" x="{PADDING + index * bar:.3f}" '
            f'y="{HEIGHT - PADDING - top:.3f}" width="{bar:.3f}" height="{top:.3f}" '
            f'fill="#1f77b4"><title>[{edges[index]:.3f}, {edges[index + 1]:.3f}): '
            f"{count}</title></rect>"
        )
    lines.append(
        f'<text x="{PADDING}" y="{HEIGHT - 4}" font-size="12">{edges[0]:.2f}</text>'
    )
    lines.append(
        f'<text x="{WIDTH - PADDING}" y="{HEIGHT - 4}" font-size="12" '
        f'text-anchor="end">{edges[-1]:.2f}</text>'
    )
    lines.append(
        f'<text x="{WIDTH / 2}" y="{PADDING - 8}" font-size="12" '
        'text-anchor="middle">log10 margin</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
