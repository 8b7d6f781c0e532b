"""Closed forms for the flat-adhesion drop profile.

For adhesion strength beta in [0, 1) and prescribed area A > 0, the energy

    J[u] = (graph length of u) - 2 * beta * half_width

over nonnegative profiles u on [-half_width, half_width] with zero endpoint
values, enclosed area A, and free half-width is minimized by a circular arc
that meets the axis at interior angle acos(beta).  This module evaluates that
arc and the sharp bounds around it.  Every length here is covariant under
area scaling: replacing A by s**2 * A multiplies radius, half-width, apex and
minimal energy by s.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass, field

from .errors import DomainError

__all__ = [
    "BETA_ONE_GUARD",
    "AdhesionParam",
    "BetaRegime",
    "CircularArcSolution",
    "classify_beta",
    "closed_form_solution",
    "contact_angle",
    "energy_lower_bound",
    "length_lower_bound",
    "minimal_energy",
    "optimal_half_width",
    "profile_height",
    "require_solvable",
    "segment_area",
    "shape_constant",
]

# Adhesion this close to 1 makes the arc degenerate (the cap area constant
# underflows relative to rounding); construction is refused there.
BETA_ONE_GUARD = 1e-9

# Inverse-trig arguments may land epsilon outside [-1, 1] through rounding;
# anything farther out than this is a genuine domain violation.
_CLAMP_TOL = 1e-14


class BetaRegime(enum.Enum):
    """Qualitative behavior of the adhesion energy by strength."""

    DISJOINT_BALL = "disjoint_ball"        # beta <= -1: optimum detaches from the axis
    NON_GRAPH_ARC = "non_graph_arc"        # -1 < beta < 0: optimal arc overhangs, not a graph
    HALF_DISK = "half_disk"                # beta == 0: arc meets the axis at a right angle
    GRAPH_ARC = "graph_arc"                # 0 < beta < 1: graph regime, full machinery
    UNBOUNDED_BELOW = "unbounded_below"    # beta >= 1: energy has no lower bound


def classify_beta(beta: float) -> BetaRegime:
    """Classify a finite adhesion strength; defined on the whole real line."""
    beta = _finite(beta, "adhesion strength")
    if beta <= -1.0:
        return BetaRegime.DISJOINT_BALL
    if beta < 0.0:
        return BetaRegime.NON_GRAPH_ARC
    if beta == 0.0:
        return BetaRegime.HALF_DISK
    if beta < 1.0:
        return BetaRegime.GRAPH_ARC
    return BetaRegime.UNBOUNDED_BELOW


@dataclass(frozen=True)
class AdhesionParam:
    """Adhesion strength together with its regime classification."""

    beta: float
    regime: BetaRegime = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "beta", _finite(self.beta, "adhesion strength"))
        object.__setattr__(self, "regime", classify_beta(self.beta))

    @property
    def solvable(self) -> bool:
        """Whether the circular-arc machinery applies (0 <= beta < 1)."""
        if self.regime not in (BetaRegime.HALF_DISK, BetaRegime.GRAPH_ARC):
            return False
        return 1.0 - self.beta >= BETA_ONE_GUARD


def require_solvable(beta) -> float:
    """Coerce a float or AdhesionParam to a solvable adhesion value."""
    param = beta if isinstance(beta, AdhesionParam) else AdhesionParam(float(beta))
    if not param.solvable:
        raise DomainError(
            f"adhesion strength {param.beta!r} outside the solvable range "
            f"[0, 1) (regime: {param.regime.value})"
        )
    return param.beta


def shape_constant(beta) -> float:
    """Area of the unit disk above the horizontal chord at height beta.

    Equals acos(beta) - beta * sqrt(1 - beta**2); strictly decreasing from
    pi/2 at beta = 0 toward 0 as beta -> 1.  The optimal radius for area A
    is sqrt(A / shape_constant(beta)).  Evaluated as (x - sin x)/2 at
    x = 2*acos(beta), which stays fully accurate as beta -> 1 where the
    direct difference cancels catastrophically.
    """
    b = require_solvable(beta)
    return 0.5 * _x_minus_sin_x(2.0 * math.acos(b))


def _x_minus_sin_x(x: float) -> float:
    # For small x the direct difference loses all digits; sum the series
    # x^3/3! - x^5/5! + ... instead (terms shrink by at least 1/20 each).
    if x >= 1.0:
        return x - math.sin(x)
    squared = x * x
    total = term = squared * x / 6.0
    k = 1
    while True:
        term *= -squared / ((2.0 * k + 2.0) * (2.0 * k + 3.0))
        updated = total + term
        if updated == total:
            return total
        total = updated
        k += 1


def _unit_coroot(beta: float) -> float:
    # sqrt(1 - beta**2) in factored form: 1 - beta*beta throws away half
    # the digits as beta -> 1, while 1 - beta is exact there.
    return math.sqrt((1.0 - beta) * (1.0 + beta))


def contact_angle(beta) -> float:
    """Interior angle acos(beta) between the optimal arc and the axis."""
    return math.acos(require_solvable(beta))


@dataclass(frozen=True)
class CircularArcSolution:
    """Optimal circular-arc profile for one (beta, area) pair.

    The profile is sqrt(radius**2 - x**2) - center_depth on
    [-half_width, half_width]: the circle's center sits center_depth below
    the axis and the arc meets the axis at interior angle acos(beta).
    """

    beta: float
    area: float
    radius: float
    half_width: float
    curvature: float
    center_depth: float
    apex_height: float

    def __post_init__(self):
        if not 0.0 < self.half_width <= self.radius:
            raise DomainError(
                f"half_width {self.half_width!r} outside (0, radius {self.radius!r}]"
            )
        if not math.isclose(self.curvature * self.radius, 1.0, rel_tol=1e-12):
            raise DomainError("curvature must be the reciprocal radius")
        scaled = self.radius * self.radius * shape_constant(self.beta)
        if not math.isclose(scaled, self.area, rel_tol=1e-12):
            raise DomainError("area inconsistent with radius for this adhesion")
        # The cap over the chord must carry the same area.  That identity is
        # ill-conditioned in the stored fields at both ends of the range:
        # d(area)/d(half_width) = 2*half_width**2/center_depth blows up near
        # the half-disk, and the asin-route cancellation costs a factor
        # (radius/half_width)**2 as beta -> 1.  Widen the tolerance by both.
        eps = sys.float_info.epsilon
        chart = 32.0 * eps * self.half_width**3 / max(
            self.center_depth * self.area, sys.float_info.min
        )
        trig = 16.0 * eps * (self.radius / self.half_width) ** 2
        if not math.isclose(
            segment_area(self.radius, self.half_width), self.area,
            rel_tol=1e-12 + chart + trig,
        ):
            raise DomainError("cap area inconsistent with (radius, half_width)")


def closed_form_solution(beta, area: float) -> CircularArcSolution:
    """Exact minimizer data for adhesion beta and prescribed area."""
    b = require_solvable(beta)
    area = _positive(area, "area")
    radius = math.sqrt(area / shape_constant(b))
    return CircularArcSolution(
        beta=b,
        area=area,
        radius=radius,
        half_width=_unit_coroot(b) * radius,
        curvature=1.0 / radius,
        center_depth=b * radius,
        apex_height=(1.0 - b) * radius,
    )


def profile_height(solution: CircularArcSolution, x: float) -> float:
    """Height of the optimal arc at abscissa x, |x| <= half_width."""
    x = _finite(x, "abscissa")
    if abs(x) > solution.half_width:
        raise DomainError(
            f"abscissa {x!r} outside the support "
            f"[-{solution.half_width!r}, {solution.half_width!r}]"
        )
    return math.sqrt(max(solution.radius * solution.radius - x * x, 0.0)) - solution.center_depth


def segment_area(radius: float, half_width: float) -> float:
    """Area of the circular cap over a chord of half-length half_width.

    Equals radius**2 * asin(half_width / radius) - half_width *
    sqrt(radius**2 - half_width**2); at half_width == radius this is the
    half-disk area.
    """
    radius = _positive(radius, "radius")
    half_width = _positive(half_width, "half_width")
    ratio = _clamp_unit(half_width / radius, "half_width / radius")
    radicand = max(radius * radius - half_width * half_width, 0.0)
    return radius * radius * math.asin(ratio) - half_width * math.sqrt(radicand)


def minimal_energy(beta, area: float) -> float:
    """Least energy over all admissible profiles: 2 * sqrt(area * shape_constant)."""
    b = require_solvable(beta)
    area = _positive(area, "area")
    return 2.0 * math.sqrt(area * shape_constant(b))


def energy_lower_bound(beta, area: float, half_width: float) -> float:
    """Sharp lower bound on the energy at fixed support half-width.

    Every admissible profile with the given enclosed area on
    [-half_width, half_width] has energy at least

        (acos(beta)/sqrt(1-beta**2) - beta) * half_width
            + sqrt(1-beta**2) * area / half_width

    with equality only for the arc of radius half_width/sqrt(1-beta**2),
    whose area is pinned by that radius; minimizing over half_width
    recovers minimal_energy.
    """
    b = require_solvable(beta)
    area = _nonnegative(area, "area")
    half_width = _positive(half_width, "half_width")
    root = _unit_coroot(b)
    return (math.acos(b) / root - b) * half_width + root * area / half_width


def length_lower_bound(beta, area: float, half_width: float) -> float:
    """Sharp lower bound on graph length at fixed area and support.

    energy_lower_bound shifted back by the adhesion term 2*beta*half_width:
    (acos(beta)/sqrt(1-beta**2) + beta) * half_width
        + sqrt(1-beta**2) * area / half_width.
    """
    b = require_solvable(beta)
    area = _nonnegative(area, "area")
    half_width = _positive(half_width, "half_width")
    root = _unit_coroot(b)
    return (math.acos(b) / root + b) * half_width + root * area / half_width


def optimal_half_width(beta, area: float) -> float:
    """Support half-width of the energy-minimal arc: sqrt((1-beta**2) * area / c).

    Evaluated exactly as closed_form_solution builds its half_width, so the
    two agree bit for bit.
    """
    b = require_solvable(beta)
    area = _positive(area, "area")
    return _unit_coroot(b) * math.sqrt(area / shape_constant(b))


def _clamp_unit(value: float, label: str) -> float:
    if value > 1.0:
        if value - 1.0 <= _CLAMP_TOL:
            return 1.0
        raise DomainError(f"{label} = {value!r} lies outside [-1, 1]")
    if value < -1.0:
        if -1.0 - value <= _CLAMP_TOL:
            return -1.0
        raise DomainError(f"{label} = {value!r} lies outside [-1, 1]")
    return value


def _finite(value, label: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{label} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise DomainError(f"{label} must be finite, got {value!r}")
    return value


def _positive(value, label: str) -> float:
    value = _finite(value, label)
    if value <= 0.0:
        raise DomainError(f"{label} must be positive, got {value!r}")
    return value


def _nonnegative(value, label: str) -> float:
    value = _finite(value, label)
    if value < 0.0:
        raise DomainError(f"{label} must be nonnegative, got {value!r}")
    return value
