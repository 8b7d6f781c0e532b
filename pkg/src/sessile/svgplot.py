"""Static SVG rendering of a discrete profile against the exact arc.

Hand-rolled SVG, no plotting dependency: the output is a deterministic
function of the inputs (coordinates printed with %.6g), so images can be
compared byte for byte in tests.
"""

from __future__ import annotations

import math

import numpy as np

from . import analytic
from . import curve as curves

__all__ = ["render_overlay", "write_overlay"]

_WIDTH = 640
_HEIGHT = 400
_PAD_FRACTION = 0.05
_ORACLE_SAMPLES = 512


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def render_overlay(curve, beta, normal_scale: float = 0.15) -> str:
    """SVG document: discrete curve, exact minimizer arc, axis, end normals.

    The exact arc drawn is the free-width minimizer for the curve's own
    enclosed area.  World y is flipped into screen coordinates so the drop
    sits above the drawn axis.
    """
    b = analytic.require_solvable(beta)
    normal_scale = analytic._positive(normal_scale, "normal_scale")
    area = curves.area(curve)
    solution = analytic.closed_form_solution(b, area)

    ox = np.linspace(-solution.half_width, solution.half_width, _ORACLE_SAMPLES)
    oy = np.maximum(
        np.sqrt(np.maximum(solution.radius**2 - ox * ox, 0.0)) - solution.center_depth, 0.0
    )

    x_max = max(curve.half_width, solution.half_width)
    y_max = max(float(np.max(curve.heights)), solution.apex_height, 1e-30)
    pad_x = 2.0 * x_max * _PAD_FRACTION
    pad_y = y_max * _PAD_FRACTION
    x_lo, x_hi = -x_max - pad_x, x_max + pad_x
    y_lo, y_hi = -pad_y, y_max + pad_y
    sx = _WIDTH / (x_hi - x_lo)
    sy = _HEIGHT / (y_hi - y_lo)

    def to_screen(x: float, y: float) -> tuple[float, float]:
        return (x - x_lo) * sx, (y_hi - y) * sy

    def polyline(xs, ys, stroke: str, width: str) -> str:
        pts = " ".join(
            f"{_fmt(px)},{_fmt(py)}" for px, py in (to_screen(x, y) for x, y in zip(xs, ys))
        )
        return (
            f'<polyline fill="none" stroke="{stroke}" stroke-width="{width}" points="{pts}"/>'
        )

    ax0 = to_screen(x_lo, 0.0)
    ax1 = to_screen(x_hi, 0.0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<line x1="{_fmt(ax0[0])}" y1="{_fmt(ax0[1])}" x2="{_fmt(ax1[0])}" '
        f'y2="{_fmt(ax1[1])}" stroke="black" stroke-width="1"/>',
        polyline(ox, oy, "#888888", "1.5"),
        polyline(curve.grid, curve.heights, "#0044cc", "2"),
    ]
    arrow = normal_scale * max(x_max, y_max)
    for (nx, ny), base_x in zip(curves.endpoint_normals(curve), (-curve.half_width, curve.half_width)):
        tip = to_screen(base_x + arrow * nx, arrow * ny)
        base = to_screen(base_x, 0.0)
        parts.append(
            f'<line x1="{_fmt(base[0])}" y1="{_fmt(base[1])}" x2="{_fmt(tip[0])}" '
            f'y2="{_fmt(tip[1])}" stroke="#cc2200" stroke-width="1.5"/>'
        )
    angle_deg = math.degrees(analytic.contact_angle(b))
    parts.append(
        f'<text x="8" y="16" font-family="monospace" font-size="12">'
        f'beta={_fmt(b)} area={_fmt(area)} contact={_fmt(angle_deg)}deg</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_overlay(curve, beta, path, normal_scale: float = 0.15) -> None:
    with open(path, "w", encoding="ascii", newline="") as handle:
        handle.write(render_overlay(curve, beta, normal_scale))
