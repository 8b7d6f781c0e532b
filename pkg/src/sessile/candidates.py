"""Energy comparison for symmetric two-bubble cluster candidates.

Each candidate is a planar region of prescribed total area, symmetric
across a horizontal axis, scored by its relative energy: the full
perimeter minus the length of the overlap with the axis.  The halves of
such a region above and below the axis are drops on a line with adhesion
beta = 1/2, so the doubled free-width drop (two circular arcs meeting the
axis at 60 degrees, a vesica) is the conjectured minimizer among the
shapes compared here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import analytic

__all__ = [
    "CandidateKind",
    "ClusterCandidate",
    "candidate_energy",
    "candidates_csv_lines",
    "lens_energy",
    "rank_candidates",
    "write_candidates_csv",
]

_CSV_HEADER = "candidate,total_area,energy"


class CandidateKind(Enum):
    """Region shapes whose relative energy has a closed form."""

    VESICA = "vesica"
    DISK_ON_AXIS = "disk_on_axis"
    DISK_OFF_AXIS = "disk_off_axis"
    HALF_DISK_PAIR = "half_disk_pair"


@dataclass(frozen=True)
class ClusterCandidate:
    """A scored candidate region."""

    kind: CandidateKind
    total_area: float
    energy: float


def candidate_energy(kind: CandidateKind | str, total_area: float) -> float:
    """Relative energy (perimeter minus axis overlap) of one candidate.

    VESICA: two congruent circular arcs crossing the axis at 60 degrees,
    the doubled minimal drop at beta = 1/2.  DISK_ON_AXIS: one round disk
    centered on the axis; its diameter chord is free.  DISK_OFF_AXIS: one
    round disk touching the axis from one side, paying full perimeter.
    HALF_DISK_PAIR: two half-disks joined along the axis, each of area
    total_area/2; equals DISK_ON_AXIS exactly, since reflecting one half
    reassembles the centered disk.
    """
    kind = CandidateKind(kind)
    total_area = analytic._positive(total_area, "total_area")
    if kind is CandidateKind.VESICA:
        return 2.0 * analytic.minimal_energy(0.5, 0.5 * total_area)
    if kind is CandidateKind.DISK_ON_AXIS:
        radius = math.sqrt(total_area / math.pi)
        return 2.0 * radius * (math.pi - 1.0)
    if kind is CandidateKind.DISK_OFF_AXIS:
        radius = math.sqrt(total_area / math.pi)
        return 2.0 * math.pi * radius
    radius = math.sqrt(total_area / math.pi)
    return 2.0 * (math.pi - 1.0) * radius


def rank_candidates(total_area: float, kinds=None) -> list[ClusterCandidate]:
    """All candidates sorted by energy, cheapest first.

    Ties keep the declaration order of CandidateKind (sorted is stable),
    which puts DISK_ON_AXIS ahead of its half-disk-pair twin.
    """
    chosen = list(CandidateKind) if kinds is None else [CandidateKind(k) for k in kinds]
    scored = [ClusterCandidate(k, total_area, candidate_energy(k, total_area)) for k in chosen]
    return sorted(scored, key=lambda c: c.energy)


def lens_energy(total_area: float, opening_angle: float) -> float:
    """Relative energy of a symmetric circular lens with given half-angle.

    The lens is bounded by two congruent arcs meeting the axis at the
    opening angle (in radians, in (0, pi/2]).  Each arc has radius set so
    the circular segment it cuts holds half the area.  At pi/3 this is the
    vesica; at pi/2 it degenerates to the axis-centered disk.
    """
    total_area = analytic._positive(total_area, "total_area")
    opening_angle = analytic._finite(opening_angle, "opening_angle")
    if not 0.0 < opening_angle <= 0.5 * math.pi:
        raise analytic.DomainError(
            f"opening_angle must lie in (0, pi/2], got {opening_angle!r}"
        )
    adhesion = math.cos(opening_angle)
    radius = math.sqrt(0.5 * total_area / analytic.shape_constant(adhesion))
    return 4.0 * radius * opening_angle - 2.0 * radius * math.sin(opening_angle)


def candidates_csv_lines(candidates) -> list[str]:
    """Header plus one CSV row per candidate (%.17g floats)."""
    lines = [_CSV_HEADER]
    for c in candidates:
        lines.append(f"{c.kind.value},{c.total_area:.17g},{c.energy:.17g}")
    return lines


def write_candidates_csv(candidates, path) -> None:
    """Write ranked candidates as CSV with LF endings."""
    with open(path, "w", encoding="ascii", newline="") as handle:
        handle.write("\n".join(candidates_csv_lines(candidates)) + "\n")
