"""Constrained minimizer: gradients, convergence, reports."""

import dataclasses
import math

import numpy as np
import pytest

from sessile import analytic, solver
from sessile import curve as curves
from sessile.errors import BracketMissError, DomainError, InfeasibleAreaError
from sessile.solver import SolverConfig

# References from a 50-digit evaluation.  The constrained minimum at
# beta = 1/2, half-width 3/2, area 1 is the circular segment with that
# chord and area; its radius solves the cap-area equation.
SEGMENT_RADIUS = 2.5421155053746816
SEGMENT_ENERGY = 1.7088250867312065
HALF_WIDTH_HALF = 1.1050478454658658
ENERGY_HALF = 1.5673989272733071


@pytest.fixture(scope="module")
def free_report():
    return solver.minimize_free_width(0.5, 1.0, SolverConfig(segments=256))


class TestConfig:
    def test_defaults_resolve(self):
        config = SolverConfig()
        assert config.resolved_gradient_tolerance() == 1e-8 * math.sqrt(256)
        assert SolverConfig(gradient_tolerance=1e-7).resolved_gradient_tolerance() == 1e-7

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"segments": 1},
            {"segments": 2.5},
            {"area_tolerance": 0.0},
            {"penalty": -1.0},
            {"penalty_growth": 1.0},
            {"outer_bracket": (2.0, 1.0)},
            {"step_shrink": 1.0},
            {"armijo": 0.7},
            {"max_inner_iterations": 0},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(DomainError):
            SolverConfig(**kwargs)


class TestGradient:
    def test_matches_finite_differences(self):
        curve = curves.random_admissible(3, segments=20)
        exact = solver.discrete_gradient(curve, 0.3, 0.7, 4.0, 1.0)
        probed = solver.finite_difference_gradient(curve, 0.3, 0.7, 4.0, 1.0)
        scale = max(1.0, float(np.max(np.abs(exact))))
        assert float(np.max(np.abs(probed - exact))) / scale <= 1e-7

    def test_independent_of_beta(self):
        # at fixed half-width the adhesion term is a constant offset
        curve = curves.random_admissible(4, segments=12)
        low = solver.discrete_gradient(curve, 0.1, 0.2, 1.0, 0.5)
        high = solver.discrete_gradient(curve, 0.9, 0.2, 1.0, 0.5)
        assert np.all(low == high)

    def test_sampled_arc_is_near_critical(self):
        # at the matched multiplier 1/radius the spacing-normalized residual
        # of the sampled arc decays quadratically under grid doubling
        sol = analytic.closed_form_solution(0.5, 1.0)
        residuals = []
        for segments in (128, 256, 512, 1024):
            curve = curves.sample_closed_form(0.5, 1.0, segments)
            grad = solver.discrete_gradient(curve, 0.5, sol.curvature, 0.0, 1.0)
            residuals.append(float(np.max(np.abs(grad))) / curve.spacing)
        for coarse, fine in zip(residuals, residuals[1:]):
            assert 3.0 <= coarse / fine <= 4.6
        assert residuals[-1] <= 1e-4

    def test_augmented_energy_terms(self):
        tent = curves.GraphCurve(1.0, [0.0, 1.0, 0.0])
        plain = solver.augmented_energy(tent, 0.5, 0.0, 0.0, 1.0)
        assert plain == curves.energy(tent, 0.5)        # residual is zero
        off_target = solver.augmented_energy(tent, 0.5, 2.0, 6.0, 0.75)
        expected = curves.energy(tent, 0.5) - 2.0 * 0.25 + 3.0 * 0.25**2
        assert math.isclose(off_target, expected, rel_tol=1e-14)


class TestFixedWidth:
    def test_reproduces_circular_segment(self):
        report = solver.minimize_fixed_width(0.5, 1.5, 1.0, SolverConfig(segments=256))
        assert report.converged
        assert abs(report.area_residual) <= 2e-10
        assert abs(report.energy - SEGMENT_ENERGY) <= 1e-4
        # energy can undershoot the continuum value only by discretization
        assert report.energy >= analytic.energy_lower_bound(0.5, 1.0, 1.5) - 5e-3
        # profile against the exact segment over the same chord
        x = report.curve.grid
        exact = np.sqrt(SEGMENT_RADIUS**2 - x * x) - math.sqrt(SEGMENT_RADIUS**2 - 1.5**2)
        assert float(np.max(np.abs(report.curve.heights - np.maximum(exact, 0.0)))) <= 1e-3
        # multiplier estimates the segment curvature
        assert math.isclose(report.multiplier_estimate, 1.0 / SEGMENT_RADIUS, rel_tol=1e-2)

    def test_matches_oracle_at_optimal_width(self):
        report = solver.minimize_fixed_width(
            0.5, HALF_WIDTH_HALF, 1.0, SolverConfig(segments=128)
        )
        assert report.converged
        assert report.sup_distance_to_oracle <= 1e-3

    def test_quadratic_profile_convergence(self):
        sups = []
        for segments in (64, 128, 256):
            report = solver.minimize_fixed_width(
                0.5, HALF_WIDTH_HALF, 1.0, SolverConfig(segments=segments)
            )
            assert report.converged
            sups.append(report.sup_distance_to_oracle)
        for coarse, fine in zip(sups, sups[1:]):
            assert 3.0 <= coarse / fine <= 5.0

    def test_infeasible_area_refused(self):
        with pytest.raises(InfeasibleAreaError):
            solver.minimize_fixed_width(0.5, 1.0, math.pi / 2.0, SolverConfig(segments=32))
        with pytest.raises(InfeasibleAreaError):
            solver.minimize_fixed_width(0.5, 1.0, 2.0, SolverConfig(segments=32))

    def test_budget_exhaustion_reported_not_raised(self):
        report = solver.minimize_fixed_width(
            0.5, 1.5, 1.0, SolverConfig(segments=128, max_inner_iterations=5)
        )
        assert not report.converged
        with pytest.raises(DomainError):
            solver.measured_contact_angle(report)

    def test_history_recording(self):
        report = solver.minimize_fixed_width(
            0.5, 1.5, 1.0, SolverConfig(segments=32, record_history=True)
        )
        assert report.history is not None and len(report.history) > 0
        iterations = [row[0] for row in report.history]
        assert iterations == sorted(iterations)
        assert solver.minimize_fixed_width(
            0.5, 1.5, 1.0, SolverConfig(segments=32)
        ).history is None


class TestFreeWidth:
    def test_recovers_closed_form(self, free_report):
        assert free_report.converged
        assert abs(free_report.half_width - HALF_WIDTH_HALF) <= 2e-3
        assert abs(free_report.energy - ENERGY_HALF) <= 1e-3
        assert free_report.sup_distance_to_oracle <= 1e-3
        assert free_report.outer_iterations > 0

    def test_contact_angle_near_sixty_degrees(self, free_report):
        angle = math.degrees(solver.measured_contact_angle(free_report))
        assert abs(angle - 60.0) <= 0.5

    def test_small_grid_other_adhesion(self):
        report = solver.minimize_free_width(0.7, 1.0, SolverConfig(segments=64))
        assert report.converged
        expected = analytic.optimal_half_width(0.7, 1.0)
        assert abs(report.half_width - expected) <= 5e-3 * expected

    def test_bracket_missing_the_optimum_raises(self):
        with pytest.raises(BracketMissError):
            solver.minimize_free_width(
                0.5, 1.0, SolverConfig(segments=32, outer_bracket=(2.5, 3.5))
            )

    def test_all_infeasible_bracket_raises(self):
        with pytest.raises(BracketMissError):
            solver.minimize_free_width(
                0.5, 1.0, SolverConfig(segments=32, outer_bracket=(0.3, 0.5))
            )

    def test_oracle_distance_zero_on_exact_sample(self):
        sample = curves.sample_closed_form(0.5, 1.0, 64)
        assert solver.oracle_distance(sample, 0.5, 1.0) <= 1e-12


class TestReportIo:
    def test_round_trip(self, tmp_path, free_report):
        path = tmp_path / "report.txt"
        solver.write_report(free_report, path)
        back = solver.read_report(path)
        assert back["beta"] == free_report.beta
        assert back["energy"] == free_report.energy
        assert back["half_width"] == free_report.half_width
        assert back["segments"] == free_report.curve.segments
        assert back["converged"] is True

    def test_lines_are_deterministic(self, free_report):
        assert solver.report_lines(free_report) == solver.report_lines(free_report)
        relabeled = dataclasses.replace(free_report, converged=False)
        assert "converged=false" in solver.report_lines(relabeled)

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "broken.txt"
        path.write_text("energy\n", encoding="ascii")
        with pytest.raises(DomainError):
            solver.read_report(path)
