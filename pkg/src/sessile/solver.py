"""Discrete constrained minimizer for the drop profile energy.

The fixed-width problem minimizes polyline length minus 2*beta*half_width
over nonnegative interior heights with the trapezoid area pinned to a
target.  It runs an augmented Lagrangian

    Phi(u) = J(u) - multiplier*(K(u) - target) + penalty/2 * (K(u) - target)**2

with projected (clamp to >= 0) backtracking gradient descent inside,
multiplier steps  multiplier -= penalty * (K - target)  outside, and
geometric penalty growth, until both the area residual and the projected
gradient norm meet tolerance.  Every accepted descent step decreases Phi;
that is asserted on each iteration.  The free-width problem wraps a
golden-section search over the half-width around the fixed-width solver.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from . import curve as curves
from .curve import GraphCurve
from .errors import BracketMissError, DomainError, InfeasibleAreaError

__all__ = [
    "SolveReport",
    "SolverConfig",
    "augmented_energy",
    "discrete_gradient",
    "finite_difference_gradient",
    "measured_contact_angle",
    "minimize_fixed_width",
    "minimize_free_width",
    "oracle_distance",
    "read_report",
    "report_lines",
    "write_report",
]

# relative margin on the (pi/2) * half_width**2 feasibility threshold
_FEASIBILITY_MARGIN = 1e-9

# outer golden-section internals
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_SCAN_GROWTH = 1.6
_SCAN_LIMIT = 40


@dataclass(frozen=True)
class SolverConfig:
    """Tuning knobs for the discrete minimizer.

    gradient_tolerance defaults to 1e-8 * sqrt(segments) when left None.
    step_init seeds the very first backtracking trial, scaled by
    1/(1 + penalty); afterwards the trial comes from a spectral
    (Barzilai-Borwein) estimate, still Armijo-guarded and monotone.
    """

    segments: int = 256
    gradient_tolerance: float | None = None
    area_tolerance: float = 1e-10
    max_inner_iterations: int = 60000
    penalty: float = 10.0
    penalty_growth: float = 10.0
    penalty_cap_factor: float = 1e8
    outer_bracket: tuple[float, float] | None = None
    outer_tolerance: float = 1e-4
    step_init: float = 1.0
    step_shrink: float = 0.5
    armijo: float = 1e-4
    multiplier_init: float = 0.0
    record_history: bool = False

    def __post_init__(self):
        if not isinstance(self.segments, (int, np.integer)) or self.segments < 2:
            raise DomainError(f"segments must be an integer >= 2, got {self.segments!r}")
        if self.gradient_tolerance is not None:
            analytic._positive(self.gradient_tolerance, "gradient_tolerance")
        analytic._positive(self.area_tolerance, "area_tolerance")
        if not isinstance(self.max_inner_iterations, (int, np.integer)) or self.max_inner_iterations < 1:
            raise DomainError("max_inner_iterations must be a positive integer")
        analytic._positive(self.penalty, "penalty")
        if not self.penalty_growth > 1.0:
            raise DomainError("penalty_growth must exceed 1")
        if not self.penalty_cap_factor >= 1.0:
            raise DomainError("penalty_cap_factor must be at least 1")
        if self.outer_bracket is not None:
            lo, hi = (analytic._positive(v, "outer_bracket endpoint") for v in self.outer_bracket)
            if not lo < hi:
                raise DomainError(f"outer_bracket must satisfy lo < hi, got ({lo!r}, {hi!r})")
        analytic._positive(self.outer_tolerance, "outer_tolerance")
        analytic._positive(self.step_init, "step_init")
        if not 0.0 < self.step_shrink < 1.0:
            raise DomainError("step_shrink must lie in (0, 1)")
        if not 0.0 < self.armijo <= 0.5:
            raise DomainError("armijo must lie in (0, 0.5]")
        analytic._finite(self.multiplier_init, "multiplier_init")

    def resolved_gradient_tolerance(self) -> float:
        if self.gradient_tolerance is not None:
            return self.gradient_tolerance
        return 1e-8 * math.sqrt(self.segments)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one constrained minimization.

    history, when recorded, holds (iteration, augmented energy, area
    residual, projected gradient norm) rows for the accepted iterates.
    """

    beta: float
    target_area: float
    curve: GraphCurve
    half_width: float
    energy: float
    area_residual: float
    multiplier_estimate: float
    sup_distance_to_oracle: float
    inner_iterations: int
    outer_iterations: int
    converged: bool
    history: tuple | None = None


def augmented_energy(curve, beta, multiplier: float, penalty: float, target_area: float) -> float:
    """Augmented Lagrangian value at an admissible curve (fsum arithmetic)."""
    b = analytic.require_solvable(beta)
    multiplier = analytic._finite(multiplier, "multiplier")
    penalty = analytic._nonnegative(penalty, "penalty")
    target_area = analytic._positive(target_area, "target_area")
    residual = curves.area(curve) - target_area
    return curves.energy(curve, b) - multiplier * residual + 0.5 * penalty * residual * residual


def discrete_gradient(curve, beta, multiplier: float, penalty: float, target_area: float) -> np.ndarray:
    """Exact gradient of augmented_energy in the interior heights.

    Component i is

        d(i)/hypot(h, d(i)) - d(i+1)/hypot(h, d(i+1))
            - (multiplier - penalty*(K - target)) * h

    with d the height differences and h the spacing.  beta never appears:
    at fixed half-width it only shifts the energy by a constant (the check
    in finite_difference_gradient confirms this).
    """
    analytic.require_solvable(beta)
    multiplier = analytic._finite(multiplier, "multiplier")
    penalty = analytic._nonnegative(penalty, "penalty")
    target_area = analytic._positive(target_area, "target_area")
    residual = curves.area(curve) - target_area
    d = np.diff(curve.heights)
    slopes = d / np.hypot(curve.spacing, d)
    return (slopes[:-1] - slopes[1:]) - (multiplier - penalty * residual) * curve.spacing


def finite_difference_gradient(
    curve,
    beta,
    multiplier: float,
    penalty: float,
    target_area: float,
    step_scale: float = 1e-6,
) -> np.ndarray:
    """Central differences of the augmented energy in each interior height.

    Probes the smooth extension of the objective on raw height arrays: the
    nonnegativity clamp lives in the descent projection, not in the
    functional, so zero-height interior nodes difference cleanly.
    """
    b = analytic.require_solvable(beta)
    step_scale = analytic._positive(step_scale, "step_scale")
    interior = curve.heights[1:-1].astype(float)
    spacing = curve.spacing
    shift = 2.0 * b * curve.half_width
    out = np.empty(interior.size)
    for i in range(interior.size):
        step = step_scale * (1.0 + abs(interior[i]))
        probe = interior.copy()
        probe[i] = interior[i] + step
        high = _raw_augmented(probe, spacing, shift, multiplier, penalty, target_area)
        probe[i] = interior[i] - step
        low = _raw_augmented(probe, spacing, shift, multiplier, penalty, target_area)
        out[i] = (high - low) / (2.0 * step)
    return out


def _raw_augmented(interior, spacing, energy_shift, multiplier, penalty, target) -> float:
    d = np.empty(interior.size + 1)
    d[0] = interior[0]
    d[1:-1] = np.diff(interior)
    d[-1] = -interior[-1]
    length = float(np.sum(np.hypot(spacing, d)))
    residual = spacing * float(np.sum(interior)) - target
    return length - energy_shift - multiplier * residual + 0.5 * penalty * residual * residual


def _raw_gradient(interior, spacing, multiplier, penalty, target) -> np.ndarray:
    d = np.empty(interior.size + 1)
    d[0] = interior[0]
    d[1:-1] = np.diff(interior)
    d[-1] = -interior[-1]
    slopes = d / np.hypot(spacing, d)
    residual = spacing * float(np.sum(interior)) - target
    return (slopes[:-1] - slopes[1:]) - (multiplier - penalty * residual) * spacing


def _descend(interior, spacing, energy_shift, multiplier, penalty, target, config, tolerance, budget, history, iteration_base):
    """Monotone projected descent on the current augmented objective.

    Returns (interior, iterations used, projected gradient norm).  Armijo
    acceptance in the projected form Phi(new) <= Phi(old) - armijo/t *
    |new - old|**2 keeps each accepted step a strict decrease.
    """
    phi = _raw_augmented(interior, spacing, energy_shift, multiplier, penalty, target)
    grad = _raw_gradient(interior, spacing, multiplier, penalty, target)
    step = config.step_init / (1.0 + penalty)
    previous = None
    used = 0
    grad_norm = _projected_norm(interior, grad)
    while used < budget:
        if history is not None:
            residual = spacing * float(np.sum(interior)) - target
            history.append((iteration_base + used, phi, residual, grad_norm))
        if grad_norm <= tolerance:
            break
        if previous is not None:
            move, grad_change = interior - previous[0], grad - previous[1]
            curvature = float(move @ grad_change)
            if curvature > 0.0:
                step = min(max(float(move @ move) / curvature, 1e-14), 1e6)
        trial = step
        accepted = False
        while trial >= 1e-18:
            candidate = np.maximum(interior - trial * grad, 0.0)
            move = candidate - interior
            move_sq = float(move @ move)
            if move_sq == 0.0:
                break
            phi_candidate = _raw_augmented(candidate, spacing, energy_shift, multiplier, penalty, target)
            if phi_candidate <= phi - config.armijo / trial * move_sq:
                accepted = True
                break
            trial *= config.step_shrink
        if not accepted:
            break
        if phi_candidate > phi + 1e-12 * (1.0 + abs(phi)):
            raise AssertionError("descent step increased the augmented energy")
        previous = (interior, grad)
        interior, phi = candidate, phi_candidate
        grad = _raw_gradient(interior, spacing, multiplier, penalty, target)
        grad_norm = _projected_norm(interior, grad)
        used += 1
    return interior, used, grad_norm


def _projected_norm(interior, grad) -> float:
    active = (interior <= 0.0) & (grad > 0.0)
    return float(np.linalg.norm(np.where(active, 0.0, grad)))


def minimize_fixed_width(beta, half_width: float, target_area: float, config: SolverConfig | None = None, *, _multiplier_start: float | None = None) -> SolveReport:
    """Minimize the drop energy at fixed support half-width and fixed area.

    Args:
        beta: adhesion strength in [0, 1).
        half_width: support half-width, positive; the target area must
            satisfy target_area < (pi/2) * half_width**2 or the constrained
            minimum is not attained by a graph (InfeasibleAreaError).
        target_area: prescribed enclosed area, positive.
        config: SolverConfig; defaults apply when None.

    Returns:
        SolveReport with outer_iterations == 0.  converged reflects both
        the area residual and projected-gradient tests; a False value means
        the iteration budget ran out first.
    """
    b = analytic.require_solvable(beta)
    config = config if config is not None else SolverConfig()
    half_width = analytic._positive(half_width, "half_width")
    target_area = analytic._positive(target_area, "target_area")
    limit = 0.5 * math.pi * half_width * half_width
    if target_area >= limit * (1.0 - _FEASIBILITY_MARGIN):
        raise InfeasibleAreaError(
            f"target area {target_area!r} does not fit over half-width {half_width!r}: "
            f"needs area < (pi/2)*half_width**2 = {limit!r}"
        )

    segments = config.segments
    spacing = 2.0 * half_width / segments
    energy_shift = 2.0 * b * half_width
    tolerance = config.resolved_gradient_tolerance()
    x = curves._node_grid(half_width, segments)[1:-1]
    # parabolic start, rescaled so the discrete trapezoid area is exact
    interior = (3.0 * target_area / (4.0 * half_width**3)) * (half_width * half_width - x * x)
    interior *= target_area / (spacing * float(np.sum(interior)))

    multiplier = config.multiplier_init if _multiplier_start is None else float(_multiplier_start)
    penalty = config.penalty
    penalty_cap = config.penalty * config.penalty_cap_factor
    history = [] if config.record_history else None
    total = 0
    previous_residual = None
    converged = False
    grad_norm = math.inf
    for round_index in range(60):
        budget = config.max_inner_iterations - total
        if budget <= 0:
            break
        # loose early rounds, full tolerance once the multiplier settles
        round_tolerance = max(tolerance, tolerance * 10.0 ** (4 - round_index))
        interior, used, grad_norm = _descend(
            interior, spacing, energy_shift, multiplier, penalty, target_area,
            config, round_tolerance, budget, history, total,
        )
        total += used
        residual = spacing * float(np.sum(interior)) - target_area
        multiplier -= penalty * residual
        if abs(residual) <= config.area_tolerance and grad_norm <= tolerance and round_tolerance <= tolerance:
            converged = True
            break
        if previous_residual is not None and abs(residual) > 0.25 * abs(previous_residual):
            penalty = min(penalty * config.penalty_growth, penalty_cap)
        previous_residual = residual

    heights = np.concatenate(([0.0], interior, [0.0]))
    result = GraphCurve(half_width, heights)
    return SolveReport(
        beta=b,
        target_area=target_area,
        curve=result,
        half_width=half_width,
        energy=curves.energy(result, b),
        area_residual=curves.area(result) - target_area,
        multiplier_estimate=multiplier,
        sup_distance_to_oracle=oracle_distance(result, b, target_area),
        inner_iterations=total,
        outer_iterations=0,
        converged=converged,
        history=tuple(history) if history is not None else None,
    )


def minimize_free_width(beta, target_area: float, config: SolverConfig | None = None) -> SolveReport:
    """Minimize the drop energy with the support half-width free.

    Golden-section search over the half-width around minimize_fixed_width.
    Without an explicit config.outer_bracket the bracket is found by a
    geometric scan upward from just above the feasibility edge
    sqrt(2*area/pi).  Raises BracketMissError when the minimum lands on a
    bracket endpoint, except at a lower endpoint sitting on the feasibility
    edge, where the constrained optimum genuinely lives for beta near 0.

    Returns:
        SolveReport for the best half-width probed; inner_iterations sums
        all probes and outer_iterations counts golden-section steps.
    """
    b = analytic.require_solvable(beta)
    config = config if config is not None else SolverConfig()
    target_area = analytic._positive(target_area, "target_area")
    feasibility_edge = math.sqrt(2.0 * target_area / math.pi)

    total_inner = 0
    warm_multiplier = config.multiplier_init

    def probe(width: float) -> tuple[float, SolveReport | None]:
        nonlocal total_inner, warm_multiplier
        try:
            report = minimize_fixed_width(b, width, target_area, config, _multiplier_start=warm_multiplier)
        except InfeasibleAreaError:
            return math.inf, None
        total_inner += report.inner_iterations
        warm_multiplier = report.multiplier_estimate
        return report.energy, report

    if config.outer_bracket is not None:
        low, high = config.outer_bracket
    else:
        low, high = _scan_bracket(probe, feasibility_edge)

    inner_low = high - _GOLDEN * (high - low)
    inner_high = low + _GOLDEN * (high - low)
    value_low, report_low = probe(inner_low)
    value_high, report_high = probe(inner_high)
    outer = 0
    current_low, current_high = low, high
    while current_high - current_low > config.outer_tolerance and outer < 200:
        if value_low < value_high:
            current_high, inner_high, value_high, report_high = inner_high, inner_low, value_low, report_low
            inner_low = current_high - _GOLDEN * (current_high - current_low)
            value_low, report_low = probe(inner_low)
        else:
            current_low, inner_low, value_low, report_low = inner_low, inner_high, value_high, report_high
            inner_high = current_low + _GOLDEN * (current_high - current_low)
            value_high, report_high = probe(inner_high)
        outer += 1

    candidates = [(v, r) for v, r in ((value_low, report_low), (value_high, report_high)) if r is not None]
    if not candidates:
        raise BracketMissError(
            f"no feasible half-width inside the bracket ({low!r}, {high!r}) for area {target_area!r}"
        )
    best = min(candidates, key=lambda pair: pair[0])[1]

    span_tolerance = max(2.0 * config.outer_tolerance, 1e-12 * high)
    lower_is_edge = low <= feasibility_edge * (1.0 + 1e-3)
    at_lower = best.half_width - low <= span_tolerance
    at_upper = high - best.half_width <= span_tolerance
    if at_upper or (at_lower and not lower_is_edge):
        raise BracketMissError(
            f"free-width minimum sits at the bracket boundary (half_width {best.half_width!r} "
            f"in ({low!r}, {high!r})); widen outer_bracket"
        )
    return dataclasses.replace(best, inner_iterations=total_inner, outer_iterations=outer)


def _scan_bracket(probe, feasibility_edge: float) -> tuple[float, float]:
    # walk p upward geometrically from just above the feasibility edge until
    # the energy rises; the minimum then lies inside the last three points
    start = feasibility_edge * (1.0 + 1e-6)
    points = [start]
    values = [probe(start)[0]]
    for _ in range(_SCAN_LIMIT):
        nxt = points[-1] * _SCAN_GROWTH
        points.append(nxt)
        values.append(probe(nxt)[0])
        if values[-1] > values[-2]:
            low = points[-3] if len(points) >= 3 else points[0]
            return low, points[-1]
    raise BracketMissError(
        "free-width energy kept decreasing during the bracket scan; pass an explicit outer_bracket"
    )


def oracle_distance(curve, beta, target_area: float) -> float:
    """Sup distance between curve heights and the zero-extended closed form.

    The reference is the exact free-width minimizer for (beta, target_area),
    extended by zero outside its own support, evaluated on the curve's grid.
    """
    solution = analytic.closed_form_solution(beta, target_area)
    x = curve.grid
    reference = np.sqrt(np.maximum(solution.radius * solution.radius - x * x, 0.0))
    reference = np.maximum(reference - solution.center_depth, 0.0)
    return float(np.max(np.abs(curve.heights - reference)))


def measured_contact_angle(report: SolveReport) -> float:
    """Interior contact angle (radians) from one-sided endpoint slopes.

    Average of the two ends.  For a converged solve it approaches
    acos(beta) as the grid refines: O(1/segments) when beta > 0, and
    O(1/sqrt(segments)) at the vertical-tangent case beta = 0.
    """
    if not report.converged:
        raise DomainError("contact angle requires a converged report")
    u = report.curve.heights
    h = report.curve.spacing
    left = math.atan(abs(u[1] - u[0]) / h)
    right = math.atan(abs(u[-2] - u[-1]) / h)
    return 0.5 * (left + right)


_REPORT_FLOATS = (
    "beta",
    "target_area",
    "half_width",
    "energy",
    "area_residual",
    "multiplier_estimate",
    "sup_distance_to_oracle",
)
_REPORT_INTS = ("segments", "inner_iterations", "outer_iterations")


def report_lines(report: SolveReport) -> list[str]:
    """Serialize a report as key=value lines (17 significant digits)."""
    lines = []
    for key in _REPORT_FLOATS:
        lines.append(f"{key}={getattr(report, key):.17g}")
    values = {"segments": report.curve.segments,
              "inner_iterations": report.inner_iterations,
              "outer_iterations": report.outer_iterations}
    for key in _REPORT_INTS:
        lines.append(f"{key}={values[key]}")
    lines.append(f"converged={'true' if report.converged else 'false'}")
    return lines


def write_report(report: SolveReport, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as handle:
        handle.write("\n".join(report_lines(report)) + "\n")


def read_report(path) -> dict:
    """Parse a key=value report file back into typed values."""
    out: dict = {}
    with open(path, encoding="ascii", newline="") as handle:
        for raw in handle.read().split("\n"):
            if not raw:
                continue
            key, _, value = raw.partition("=")
            if not _:
                raise DomainError(f"malformed report line {raw!r}")
            if key in _REPORT_FLOATS:
                out[key] = float(value)
            elif key in _REPORT_INTS:
                out[key] = int(value)
            elif key == "converged":
                out[key] = value == "true"
            else:
                out[key] = value
    return out
