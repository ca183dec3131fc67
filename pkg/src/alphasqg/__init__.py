"""Contour dynamics for horizontally periodic alpha-SQG patches and layers."""

from .errors import (
    AccuracyGuardError,
    AlphaSQGError,
    BoundaryProximityError,
    DegenerateChainError,
    LatticeSingularityError,
    SelfIntersectionError,
    SingularPointError,
    TruncationError,
)
from .kernels import (
    Alpha,
    KernelConfig,
    c_alpha,
    c_zero,
    covering_map,
    green_free,
    green_periodic,
    h_alpha,
    k_free,
    r_alpha,
    r_alpha_grad,
)

__version__ = "0.1.0"
