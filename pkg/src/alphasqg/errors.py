"""Exception types shared across the package."""


class AlphaSQGError(Exception):
    """Base class for all package errors."""


class SingularPointError(AlphaSQGError):
    """Kernel evaluated at its singular point."""


class LatticeSingularityError(AlphaSQGError):
    """Evaluation point coincides with (or is too close to) a lattice image."""


class TruncationError(AlphaSQGError):
    """Requested tail tolerance not reachable within the image cap."""


class AccuracyGuardError(AlphaSQGError):
    """Requested derivative/norm order too high for the grid resolution."""


class SelfIntersectionError(AlphaSQGError):
    """Chord-arc functional exceeded its ceiling (curve near self-intersection)."""


class BoundaryProximityError(AlphaSQGError):
    """Field evaluation requested too close to a patch boundary."""


class DegenerateChainError(AlphaSQGError):
    """Chain has zero norm where a nonzero one is required."""
