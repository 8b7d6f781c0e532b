"""Shared exception types."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class InfeasibleAreaError(DomainError):
    """Target area too large for the given support.

    The fixed-width problem attains its minimum only for
    target_area < (pi/2) * half_width**2; at or beyond that threshold the
    constrained infimum is not realized by a graph over the support.
    """


class BracketMissError(RuntimeError):
    """The outer search bracket does not contain an interior minimum."""
