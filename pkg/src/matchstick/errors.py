"""Exception hierarchy for construction, solving and certification failures."""

from __future__ import annotations


class MatchstickError(Exception):
    """Base class for all package errors."""


class DegenerateSegment(MatchstickError):
    """Segment endpoints coincide (below the geometric tolerance)."""


class DegenerateCenters(MatchstickError):
    """Circle centers coincide; the unit-circle intersection is undefined."""


class NoIntersection(MatchstickError):
    """Circle centers are too far apart for unit circles to intersect."""


class ParseError(MatchstickError):
    """A fixture or graph file could not be parsed."""


class VersionError(ParseError):
    """Unsupported graph file format version."""


class MergeAmbiguity(MatchstickError):
    """A vertex merge chain spans more than the dedup tolerance."""


class MissingLabels(MatchstickError):
    """A required vertex label (B, E, ...) is absent from the graph."""


class AsymmetricFixture(MatchstickError):
    """Graph lacks the mirror symmetry required by the construction."""


class DimensionMismatch(MatchstickError):
    """State vector length does not match the template."""


class NoConvergence(MatchstickError):
    """Solver failed to reach the requested residual tolerance."""

    def __init__(self, message: str, last_omega=None):
        super().__init__(message)
        self.last_omega = last_omega


class StepCollapse(NoConvergence):
    """Continuation step locked up (constraint became infeasible)."""


class NoPassingN(MatchstickError):
    """No n in the searched range passed the verification criteria."""


class SeamMismatch(MatchstickError):
    """Seam vertices failed to coincide, or a glued edge is not unit."""


class MergeFailure(MatchstickError):
    """An expected seam coincidence exceeds the merge tolerance."""


class UnexpectedCollision(MatchstickError):
    """Distinct non-seam vertices fell within the dedup tolerance."""
