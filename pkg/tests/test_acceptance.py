"""Acceptance gate: one test per criterion, pinned tolerances and budgets.

Run with `pytest -v -s tests/test_acceptance.py` to see one PASS/FAIL line
per criterion; each test also fails loudly through its asserts.  Reference
constants are frozen from 50-digit extended-precision evaluations of the
closed forms.
"""

import math
import time

import numpy as np

from sessile import analytic, candidates, solver
from sessile import curve as curves
from sessile.solver import SolverConfig

VESICA = 3.1347978545466141          # 4 * sqrt(shape_constant(1/2)), area 2
DISK_ON_AXIS = 3.4174874276562703    # 2 * (pi - 1) * sqrt(2/pi)
DISK_OFF_AXIS = 5.0132565492620010   # 2 * pi * sqrt(2/pi)


def report(index: int, ok: bool, detail: str) -> None:
    print(f"criterion {index}: {'PASS' if ok else 'FAIL'} ({detail})", flush=True)
    assert ok, f"criterion {index}: {detail}"


def test_criterion_1_closed_form_self_consistency():
    start = time.perf_counter()
    worst_area = worst_identity = worst_bound = 0.0
    for step in range(1, 20):
        beta = 0.05 * step
        root = math.sqrt(1.0 - beta * beta)
        for area in (0.1, 1.0, 10.0):
            sol = analytic.closed_form_solution(beta, area)
            worst_area = max(
                worst_area,
                abs(analytic.segment_area(sol.radius, sol.half_width) - area) / area,
            )
            worst_identity = max(worst_identity, abs(sol.curvature * sol.half_width - root))
            bound = analytic.energy_lower_bound(beta, area, sol.half_width)
            expected = 2.0 * math.sqrt(area * analytic.shape_constant(beta))
            worst_bound = max(worst_bound, abs(bound - expected) / max(1.0, expected))
    elapsed = time.perf_counter() - start
    ok = worst_area <= 1e-10 and worst_identity <= 1e-12 and worst_bound <= 1e-12 and elapsed < 1.0
    report(1, ok,
           f"cap area rel {worst_area:.2e}, width identity {worst_identity:.2e}, "
           f"bound rel {worst_bound:.2e}, {elapsed:.2f}s")


def test_criterion_2_sharp_inequality_sweep():
    start = time.perf_counter()
    violations = 0
    min_gap = math.inf
    worst_ratio_low, worst_ratio_high = math.inf, 0.0
    for index, beta in enumerate((0.1, 0.3, 0.5, 0.7, 0.9)):
        half_widths, heights = curves.random_admissible_batch([2026, index], 100_000)
        lengths, _ = curves.batch_length_area(half_widths, heights)
        gaps = curves.batch_isoperimetric_gap(beta, half_widths, heights)
        violations += int(np.sum(gaps < -1e-12 * (1.0 + lengths)))
        min_gap = min(min_gap, float(np.min(gaps)))
        coarse = curves.isoperimetric_gap(curves.sample_closed_form(beta, 1.0, 128), beta)
        fine = curves.isoperimetric_gap(curves.sample_closed_form(beta, 1.0, 256), beta)
        ratio = coarse / fine
        worst_ratio_low = min(worst_ratio_low, ratio)
        worst_ratio_high = max(worst_ratio_high, ratio)
    elapsed = time.perf_counter() - start
    ok = (violations == 0 and 3.5 <= worst_ratio_low and worst_ratio_high <= 4.5
          and elapsed < 30.0)
    report(2, ok,
           f"500000 curves, {violations} violations, min gap {min_gap:.2e}, "
           f"doubling ratios [{worst_ratio_low:.2f}, {worst_ratio_high:.2f}], {elapsed:.1f}s")


def test_criterion_3_solver_versus_oracle():
    start = time.perf_counter()
    target_width = analytic.optimal_half_width(0.5, 1.0)
    target_energy = analytic.minimal_energy(0.5, 1.0)
    result = solver.minimize_free_width(0.5, 1.0, SolverConfig(segments=256))
    width_err = abs(result.half_width - target_width)
    energy_err = abs(result.energy - target_energy)
    fine = solver.minimize_free_width(0.5, 1.0, SolverConfig(segments=1024))
    angle_err = abs(math.degrees(solver.measured_contact_angle(fine)) - 60.0)
    elapsed = time.perf_counter() - start
    ok = (result.converged and width_err <= 2e-3 and energy_err <= 1e-3
          and result.sup_distance_to_oracle <= 1e-3 and fine.converged
          and angle_err <= 0.5 and elapsed < 60.0)
    report(3, ok,
           f"width err {width_err:.1e}, energy err {energy_err:.1e}, "
           f"sup {result.sup_distance_to_oracle:.1e}, angle err {angle_err:.2f} deg, "
           f"{elapsed:.1f}s")


def test_criterion_4_gradient_check():
    start = time.perf_counter()
    worst = 0.0
    for beta in (0.1, 0.5, 0.9):
        rng = np.random.default_rng(404)
        for index in range(100):
            curve = curves.random_admissible([404, index], segments=16)
            multiplier = float(rng.uniform(-1.0, 1.0))
            penalty = float(rng.uniform(0.0, 10.0))
            target = float(rng.uniform(0.1, 2.0))
            exact = solver.discrete_gradient(curve, beta, multiplier, penalty, target)
            probed = solver.finite_difference_gradient(curve, beta, multiplier, penalty, target)
            scale = max(1.0, float(np.max(np.abs(exact))))
            worst = max(worst, float(np.max(np.abs(probed - exact))) / scale)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 10.0
    report(4, ok, f"300 curves, max relative error {worst:.2e}, {elapsed:.2f}s")


def test_criterion_5_zero_adhesion_half_disk():
    result = solver.minimize_free_width(0.0, 1.0, SolverConfig(segments=256))
    width_err = abs(result.half_width - math.sqrt(2.0 / math.pi))
    energy_err = abs(result.energy - 2.0 * math.sqrt(math.pi / 2.0))
    ok = result.converged and width_err <= 2e-3 and energy_err <= 2e-3
    report(5, ok, f"width err {width_err:.1e}, energy err {energy_err:.1e}")


def test_criterion_6_scaling_covariance():
    worst_closed = 0.0
    for scale in (0.5, 2.0):
        base = analytic.closed_form_solution(0.5, 1.0)
        scaled = analytic.closed_form_solution(0.5, scale * scale)
        worst_closed = max(
            worst_closed,
            abs(scaled.radius - scale * base.radius) / (scale * base.radius),
            abs(scaled.half_width - scale * base.half_width) / (scale * base.half_width),
        )
    config = SolverConfig(segments=256)
    reference = solver.minimize_free_width(0.5, 1.0, config).half_width
    worst_solver = 0.0
    for scale in (0.5, 2.0):
        solved = solver.minimize_free_width(0.5, scale * scale, config).half_width
        worst_solver = max(worst_solver, abs(solved - scale * reference) / (scale * reference))
    ok = worst_closed <= 1e-12 and worst_solver <= 5e-3
    report(6, ok, f"closed-form rel {worst_closed:.1e}, solver rel {worst_solver:.1e}")


def test_criterion_7_candidate_ranking():
    vesica = candidates.candidate_energy("vesica", 2.0)
    disk_on = candidates.candidate_energy("disk_on_axis", 2.0)
    disk_off = candidates.candidate_energy("disk_off_axis", 2.0)
    half = curves.sample_closed_form(0.5, 1.0, 4096)
    doubled = 2.0 * curves.energy(half, 0.5)
    anchor_err = abs(vesica - VESICA)
    cross_err = abs(doubled - vesica)
    ok = (anchor_err <= 1e-6
          and abs(disk_on - DISK_ON_AXIS) <= 1e-4
          and abs(disk_off - DISK_OFF_AXIS) <= 1e-4
          and vesica < disk_on < disk_off
          and cross_err <= 1e-5)
    report(7, ok,
           f"vesica {vesica:.7f} (anchor err {anchor_err:.1e}) < disk-on {disk_on:.4f} "
           f"< disk-off {disk_off:.4f}, doubling cross-check {cross_err:.1e}")
