"""Discrete admissible profiles: nonnegative polylines on a uniform grid.

A GraphCurve is itself an admissible competitor for the drop problem (the
polyline is its own graph), so the exact polyline length and exact trapezoid
area let the sharp inequality be checked with no discretization slack.
Length and area sums go through math.fsum, whose correctly rounded result is
independent of term order: reflecting a curve reproduces both values bit for
bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from .errors import DomainError

__all__ = [
    "CurveMetrics",
    "GraphCurve",
    "area",
    "batch_isoperimetric_gap",
    "batch_length_area",
    "endpoint_normals",
    "energy",
    "isoperimetric_gap",
    "length",
    "metrics",
    "random_admissible",
    "random_admissible_batch",
    "read_curve_csv",
    "sample_closed_form",
    "symmetrize_support",
    "write_curve_csv",
]

_CSV_HEADER = "x,u"

# largest spacing-refinement factor tried when zero-extending a support
_MAX_REFINE = 64


def _node_grid(half_width: float, segments: int) -> np.ndarray:
    # x[i] = half_width * (2i - n)/n: exactly antisymmetric in floating
    # point (x[n-i] == -x[i]) with exact endpoint values +-half_width.
    i = np.arange(segments + 1)
    return half_width * ((2 * i - segments) / segments)


@dataclass(frozen=True, eq=False)
class GraphCurve:
    """Nonnegative polyline over [-half_width, half_width] on a uniform grid.

    heights holds one value per node; both endpoint values are exactly zero
    and every height is finite and nonnegative.
    """

    half_width: float
    heights: np.ndarray

    def __post_init__(self):
        try:
            half_width = float(self.half_width)
        except (TypeError, ValueError):
            raise DomainError(f"half_width must be a real number, got {self.half_width!r}") from None
        if not (math.isfinite(half_width) and half_width > 0.0):
            raise DomainError(f"half_width must be positive and finite, got {half_width!r}")
        u = np.array(self.heights, dtype=float)
        if u.ndim != 1 or u.size < 3:
            raise DomainError("heights must be one-dimensional with at least three nodes")
        if not np.all(np.isfinite(u)):
            raise DomainError("heights must be finite")
        if u[0] != 0.0 or u[-1] != 0.0:
            raise DomainError("endpoint heights must be exactly zero")
        if np.any(u < 0.0):
            raise DomainError("heights must be nonnegative")
        u.flags.writeable = False
        object.__setattr__(self, "half_width", half_width)
        object.__setattr__(self, "heights", u)

    @property
    def segments(self) -> int:
        return self.heights.size - 1

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.segments

    @property
    def grid(self) -> np.ndarray:
        return _node_grid(self.half_width, self.segments)


def length(curve: GraphCurve) -> float:
    """Exact polyline length, summed in order-independent (fsum) arithmetic."""
    return math.fsum(np.hypot(curve.spacing, np.diff(curve.heights)))


def area(curve: GraphCurve) -> float:
    """Exact trapezoid area; with zero endpoints this is spacing * sum(interior)."""
    return curve.spacing * math.fsum(curve.heights[1:-1])


def energy(curve: GraphCurve, beta) -> float:
    """Drop energy of the polyline: length - 2 * beta * half_width."""
    b = analytic.require_solvable(beta)
    return length(curve) - 2.0 * b * curve.half_width


def isoperimetric_gap(curve: GraphCurve, beta) -> float:
    """Polyline length minus its sharp lower bound, nonnegative for every curve.

    Zero exactly at arcs of radius half_width / sqrt(1 - beta**2); for the
    sampled closed form the gap decays like segments**-2.
    """
    b = analytic.require_solvable(beta)
    return length(curve) - analytic.length_lower_bound(b, area(curve), curve.half_width)


@dataclass(frozen=True)
class CurveMetrics:
    """Length, area, energy and sharp-inequality gap of one curve."""

    length: float
    area: float
    energy: float
    gap: float


def metrics(curve: GraphCurve, beta) -> CurveMetrics:
    b = analytic.require_solvable(beta)
    curve_length = length(curve)
    curve_area = area(curve)
    return CurveMetrics(
        length=curve_length,
        area=curve_area,
        energy=curve_length - 2.0 * b * curve.half_width,
        gap=curve_length - analytic.length_lower_bound(b, curve_area, curve.half_width),
    )


def sample_closed_form(beta, area_value: float, segments: int) -> GraphCurve:
    """Sample the exact circular-arc minimizer on a uniform grid.

    Endpoint heights are assigned exactly zero; interior heights inherit the
    grid's exact antisymmetry, so heights[i] == heights[n-i] bit for bit.
    """
    segments = _segment_count(segments)
    solution = analytic.closed_form_solution(beta, area_value)
    x = _node_grid(solution.half_width, segments)
    u = np.sqrt(np.maximum(solution.radius * solution.radius - x * x, 0.0))
    u = np.maximum(u - solution.center_depth, 0.0)
    u[0] = u[-1] = 0.0
    return GraphCurve(solution.half_width, u)


def random_admissible(
    seed,
    p_range: tuple[float, float] = (0.2, 3.0),
    segments: int = 16,
    amplitude: float = 1.0,
) -> GraphCurve:
    """Seed-deterministic random admissible curve.

    Mixes four styles so degenerate cases appear with positive probability:
    rough iid heights, a smooth nonnegative bump, sparse steep spikes, and a
    near-flat profile at 1e-8 of the amplitude.
    """
    segments = _segment_count(segments)
    lo, hi = _checked_p_range(p_range)
    amplitude = analytic._nonnegative(amplitude, "amplitude")
    rng = np.random.default_rng(seed)
    half_width = float(rng.uniform(lo, hi))
    interior = _random_interior(rng, segments, amplitude)
    heights = np.concatenate(([0.0], interior, [0.0]))
    return GraphCurve(half_width, heights)


def _random_interior(rng, segments: int, amplitude: float) -> np.ndarray:
    nodes = segments - 1
    style = int(rng.integers(4))
    if style == 0:
        return amplitude * rng.uniform(0.0, 1.0, nodes)
    if style == 1:
        walk = np.cumsum(rng.standard_normal(segments))
        bridge = np.abs(walk[:-1] - np.arange(1, segments) / segments * walk[-1])
        peak = bridge.max()
        return bridge * (amplitude * rng.uniform() / peak) if peak > 0.0 else bridge
    if style == 2:
        out = np.zeros(nodes)
        spikes = int(rng.integers(1, max(nodes // 4, 1) + 1))
        where = rng.choice(nodes, size=min(spikes, nodes), replace=False)
        out[where] = amplitude * rng.uniform(0.0, 1.0, where.size)
        return out
    return amplitude * 1e-8 * rng.uniform(0.0, 1.0, nodes)


def random_admissible_batch(
    seed,
    count: int,
    p_range: tuple[float, float] = (0.2, 3.0),
    segments: int = 16,
    amplitude: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized sampler for large inequality sweeps.

    Returns (half_widths, heights) with shapes (count,) and
    (count, segments+1).  Deterministic in the seed and built from the same
    admissibility contract and style mixture as random_admissible; rows are
    not promised to replicate individual random_admissible draws.
    """
    segments = _segment_count(segments)
    lo, hi = _checked_p_range(p_range)
    amplitude = analytic._nonnegative(amplitude, "amplitude")
    if not isinstance(count, (int, np.integer)) or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    rng = np.random.default_rng(seed)
    nodes = segments - 1
    half_widths = rng.uniform(lo, hi, count)
    style = rng.integers(0, 4, count)[:, None]
    rough = rng.uniform(0.0, 1.0, (count, nodes))
    walk = np.cumsum(rng.standard_normal((count, segments)), axis=1)
    bridge = np.abs(walk[:, :-1] - np.arange(1, segments) / segments * walk[:, -1:])
    peak = bridge.max(axis=1, keepdims=True)
    smooth = bridge * np.where(peak > 0.0, amplitude * rng.uniform(0.0, 1.0, (count, 1)) / np.where(peak > 0.0, peak, 1.0), 0.0)
    keep = rng.uniform(0.0, 1.0, (count, nodes)) < 2.0 / max(nodes, 2)
    spikes = np.where(keep, amplitude * rng.uniform(0.0, 1.0, (count, nodes)), 0.0)
    interior = np.select(
        [style == 0, style == 1, style == 2],
        [amplitude * rough, smooth, spikes],
        default=amplitude * 1e-8 * rough,
    )
    heights = np.zeros((count, segments + 1))
    heights[:, 1:-1] = interior
    return half_widths, heights


def batch_length_area(half_widths: np.ndarray, heights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise polyline lengths and trapezoid areas for a height matrix.

    Fast path for sweeps: plain left-to-right summation, which can differ
    from the fsum values by a few ulp.
    """
    half_widths = np.asarray(half_widths, dtype=float)
    heights = np.asarray(heights, dtype=float)
    spacing = 2.0 * half_widths / (heights.shape[1] - 1)
    lengths = np.sum(np.hypot(spacing[:, None], np.diff(heights, axis=1)), axis=1)
    areas = spacing * np.sum(heights[:, 1:-1], axis=1)
    return lengths, areas


def batch_isoperimetric_gap(beta, half_widths: np.ndarray, heights: np.ndarray) -> np.ndarray:
    """Row-wise sharp-inequality gaps: length minus its lower bound.

    Same quantity isoperimetric_gap computes for a single curve, evaluated
    through batch_length_area for sweeps over many profiles at once.
    """
    b = analytic.require_solvable(beta)
    half_widths = np.asarray(half_widths, dtype=float)
    lengths, areas = batch_length_area(half_widths, heights)
    root = math.sqrt((1.0 - b) * (1.0 + b))
    bound = (math.acos(b) / root + b) * half_widths + root * areas / half_widths
    return lengths - bound


def endpoint_normals(curve: GraphCurve) -> tuple[np.ndarray, np.ndarray]:
    """Outward unit normals of the graph at the two axis contact points.

    Each is (-slope, 1)/sqrt(1 + slope**2) with the one-sided endpoint
    slope; the vertical component equals cos of the contact angle, which
    for the exact minimizer is the adhesion strength.
    """
    u = curve.heights
    h = curve.spacing
    return _upward_normal((u[1] - u[0]) / h), _upward_normal((u[-1] - u[-2]) / h)


def _upward_normal(slope: float) -> np.ndarray:
    scale = math.hypot(1.0, slope)
    return np.array([-slope / scale, 1.0 / scale])


def symmetrize_support(heights, support: tuple[float, float]) -> GraphCurve:
    """Zero-extend a profile on [a, b] to the symmetric support [-p, p].

    p = max(|a|, |b|).  The output grid refines the input spacing (integer
    factor up to 64) so that every input node is kept: the extension adds
    exactly flat axis segments, so the area is preserved and the length
    grows by exactly the added flat pieces.  Supports whose extension gaps
    are incommensurate with the grid spacing are refused; resampling would
    cut corners and silently change both length and area.
    """
    a, b = (analytic._finite(v, "support endpoint") for v in support)
    if not a < b:
        raise DomainError(f"support must satisfy a < b, got ({a!r}, {b!r})")
    u = np.asarray(heights, dtype=float)
    if u.ndim != 1 or u.size < 2:
        raise DomainError("heights must be one-dimensional with at least two nodes")
    if not np.all(np.isfinite(u)):
        raise DomainError("heights must be finite")
    if u[0] != 0.0 or u[-1] != 0.0:
        raise DomainError("heights must vanish at the support endpoints")
    if np.any(u < 0.0):
        raise DomainError("heights must be nonnegative")

    half_width = max(abs(a), abs(b))
    old_segments = u.size - 1
    spacing = (b - a) / old_segments
    left_gap = a + half_width
    right_gap = half_width - b
    for factor in range(1, _MAX_REFINE + 1):
        left_count = _near_integer(left_gap * factor / spacing)
        right_count = _near_integer(right_gap * factor / spacing)
        if left_count is None or right_count is None:
            continue
        if left_count + factor * old_segments + right_count < 2:
            continue
        refined = _refine(u, factor)
        extended = np.concatenate((np.zeros(left_count), refined, np.zeros(right_count)))
        return GraphCurve(half_width, extended)
    raise DomainError(
        "support extension gaps are incommensurate with the grid spacing; "
        "refine the input grid before symmetrizing"
    )


def _near_integer(value: float) -> int | None:
    rounded = round(value)
    if abs(value - rounded) <= 1e-9 * max(1.0, abs(value)):
        return int(rounded)
    return None


def _refine(u: np.ndarray, factor: int) -> np.ndarray:
    if factor == 1:
        return u.copy()
    w = np.arange(factor) / factor
    blocks = u[:-1, None] * (1.0 - w) + u[1:, None] * w
    return np.append(blocks.reshape(-1), u[-1])


def write_curve_csv(curve: GraphCurve, path) -> None:
    """Write the curve as x,u rows with 17 significant digits and LF endings."""
    rows = [_CSV_HEADER]
    rows.extend(f"{x:.17g},{u:.17g}" for x, u in zip(curve.grid, curve.heights))
    with open(path, "w", encoding="ascii", newline="") as handle:
        handle.write("\n".join(rows) + "\n")


def read_curve_csv(path) -> GraphCurve:
    """Read a curve written by write_curve_csv; validates grid uniformity."""
    with open(path, encoding="ascii", newline="") as handle:
        text = handle.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != _CSV_HEADER:
        raise DomainError(f"curve CSV must start with the header {_CSV_HEADER!r}")
    if len(lines) < 4:
        raise DomainError("curve CSV needs at least three node rows")
    try:
        table = np.array([[float(cell) for cell in row.split(",")] for row in lines[1:]])
    except ValueError:
        raise DomainError("curve CSV rows must be two comma-separated numbers") from None
    if table.ndim != 2 or table.shape[1] != 2:
        raise DomainError("curve CSV rows must be two comma-separated numbers")
    x, u = table[:, 0], table[:, 1]
    half_width = x[-1]
    if not (math.isfinite(half_width) and half_width > 0.0):
        raise DomainError("last abscissa must be the positive half-width")
    expected = _node_grid(half_width, x.size - 1)
    if not np.allclose(x, expected, rtol=0.0, atol=1e-9 * max(1.0, half_width)):
        raise DomainError("curve CSV abscissae are not a symmetric uniform grid")
    return GraphCurve(half_width, u)


def _segment_count(segments) -> int:
    if not isinstance(segments, (int, np.integer)) or segments < 2:
        raise DomainError(f"segments must be an integer >= 2, got {segments!r}")
    return int(segments)


def _checked_p_range(p_range) -> tuple[float, float]:
    lo, hi = (analytic._finite(v, "p_range endpoint") for v in p_range)
    if not 0.0 < lo <= hi:
        raise DomainError(f"p_range must satisfy 0 < lo <= hi, got ({lo!r}, {hi!r})")
    return lo, hi
