"""Sessile drop on a line: exact minimizers, a discrete solver, and checks.

The continuous problem minimizes graph length minus an adhesion reward
along the substrate line, at prescribed enclosed area, over nonnegative
profiles with free support width.  This package carries the closed-form
circular-arc solution, sharp lower bounds with a verifier for the
underlying inequality, a constrained direct minimizer that reproduces the
closed form, and an energy comparison between symmetric cluster
candidates built from such drops.
"""

from .analytic import (
    AdhesionParam,
    BetaRegime,
    CircularArcSolution,
    classify_beta,
    closed_form_solution,
    contact_angle,
    energy_lower_bound,
    length_lower_bound,
    minimal_energy,
    optimal_half_width,
    profile_height,
    segment_area,
    shape_constant,
)
from .candidates import (
    CandidateKind,
    ClusterCandidate,
    candidate_energy,
    lens_energy,
    rank_candidates,
    write_candidates_csv,
)
from .curve import (
    CurveMetrics,
    GraphCurve,
    area,
    batch_isoperimetric_gap,
    batch_length_area,
    endpoint_normals,
    energy,
    isoperimetric_gap,
    length,
    metrics,
    random_admissible,
    random_admissible_batch,
    read_curve_csv,
    sample_closed_form,
    symmetrize_support,
    write_curve_csv,
)
from .errors import BracketMissError, DomainError, InfeasibleAreaError
from .solver import (
    SolveReport,
    SolverConfig,
    finite_difference_gradient,
    measured_contact_angle,
    minimize_fixed_width,
    minimize_free_width,
    oracle_distance,
    read_report,
    write_report,
)
from .svgplot import render_overlay, write_overlay

__version__ = "0.1.0"

__all__ = [
    "AdhesionParam",
    "BetaRegime",
    "BracketMissError",
    "CandidateKind",
    "CircularArcSolution",
    "ClusterCandidate",
    "CurveMetrics",
    "DomainError",
    "GraphCurve",
    "InfeasibleAreaError",
    "SolveReport",
    "SolverConfig",
    "__version__",
    "area",
    "batch_isoperimetric_gap",
    "batch_length_area",
    "candidate_energy",
    "classify_beta",
    "closed_form_solution",
    "contact_angle",
    "endpoint_normals",
    "energy",
    "energy_lower_bound",
    "finite_difference_gradient",
    "isoperimetric_gap",
    "length",
    "length_lower_bound",
    "lens_energy",
    "measured_contact_angle",
    "metrics",
    "minimal_energy",
    "minimize_fixed_width",
    "minimize_free_width",
    "optimal_half_width",
    "oracle_distance",
    "profile_height",
    "random_admissible",
    "random_admissible_batch",
    "rank_candidates",
    "read_curve_csv",
    "read_report",
    "render_overlay",
    "sample_closed_form",
    "segment_area",
    "shape_constant",
    "symmetrize_support",
    "write_candidates_csv",
    "write_curve_csv",
    "write_overlay",
    "write_report",
]
