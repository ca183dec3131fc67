"""Free-space and horizontally periodized interaction kernels.

The free-space Green's function is G(x) = c_a / |x|^a with

    c_a = Gamma(a/2) / (pi * 2^(2-a) * Gamma(1 - a/2)),

and its perpendicular-gradient kernel K = grad_perp G, with the convention
grad_perp = (-d2, d1) and x_perp = (-x2, x1).  Periodizing over the integer
horizontal lattice splits the kernel as G_p = G + R, where the lattice
correction

    R(x) = c_a * sum_{j != 0} [ (x2^2 + (x1-j)^2)^(-a/2) - |j|^(-a) ]

is smooth away from the nonzero lattice points, even in each coordinate,
vanishes at the origin, and satisfies H = grad_perp R for the image-sum
velocity correction H(x) = sum_{j != 0} K(x - (j, 0)).

All lattice quantities are first reduced to the fundamental strip
|x1| <= 1/2 by the covering map and reassembled outside it through

    R(x) = R(p(x)) + G(p(x)) - G(x)

(and the analogous identities for derivatives), which is exact because
G + R is 1-periodic in x1.

Points are numpy arrays of shape (2,) or (n, 2); outputs match the input
rank.  Truncation radii are certified per call by doubling a probe subset
until the change falls below the configured tolerance.
"""

import math

import numpy as np

from . import lattice
from .errors import LatticeSingularityError, SingularPointError

_LATTICE_EPS = 1e-12


def _alpha_value(alpha):
    a = float(getattr(alpha, "value", alpha))
    if not 0.0 < a <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {a}")
    return a


class Alpha:
    """Validated kernel exponent, in (0, 1].

    The time-evolution path additionally requires value < 1; value = 1 is
    accepted for kernel evaluation only (that check lives in evolution).
    """

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = _alpha_value(value)

    def __repr__(self):
        return f"Alpha({self.value!r})"

    def __eq__(self, other):
        return self.value == float(getattr(other, "value", other))

    def __hash__(self):
        return hash(self.value)


class KernelConfig:
    """Evaluation contract for the periodized kernel.

    tail_tolerance is the absolute error allowed in the truncated lattice
    sums; max_images caps the truncation radius.  The last certified radius
    is cached so repeated evaluations start from a good guess.
    """

    def __init__(self, alpha, tail_tolerance=1e-10, max_images=10**6):
        self.alpha = alpha if isinstance(alpha, Alpha) else Alpha(alpha)
        if tail_tolerance <= 0.0:
            raise ValueError("tail_tolerance must be positive")
        if max_images < 1:
            raise ValueError("max_images must be at least 1")
        self.tail_tolerance = float(tail_tolerance)
        self.max_images = int(max_images)
        self._n_start = 64

    def _sums(self, x1, x2, kinds, scale):
        vals, n = lattice.certified_sums(
            x1,
            x2,
            self.alpha.value,
            kinds,
            self.tail_tolerance,
            self.max_images,
            n_start=self._n_start,
            scale=scale,
        )
        self._n_start = n
        return vals


def c_alpha(alpha):
    """Normalization constant of the free-space Green's function."""
    a = _alpha_value(alpha)
    return math.gamma(0.5 * a) / (math.pi * 2.0 ** (2.0 - a) * math.gamma(1.0 - 0.5 * a))


def c_zero():
    """The alpha -> 0 reference constant 1/(2*pi) (log-kernel normalization)."""
    return 1.0 / (2.0 * math.pi)


def _as_points(x):
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 1:
        return pts[None, :], True
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must have shape (2,) or (n, 2)")
    return pts, False


def covering_map(x):
    """Reduce to the fundamental strip: (x1 - round-to-nearest(x1), x2)."""
    pts, single = _as_points(x)
    out = pts.copy()
    out[:, 0] -= np.floor(pts[:, 0] + 0.5)
    return out[0] if single else out


def green_free(x, cfg):
    """Free-space kernel c_a / |x|^a."""
    a = _alpha_value(cfg.alpha if isinstance(cfg, KernelConfig) else cfg)
    pts, single = _as_points(x)
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    if np.any(r2 == 0.0):
        raise SingularPointError("green_free is singular at the origin")
    out = c_alpha(a) * r2 ** (-0.5 * a)
    return out[0] if single else out


def k_free(x, cfg):
    """Perpendicular-gradient kernel -a * c_a * x_perp / |x|^(2+a)."""
    a = _alpha_value(cfg.alpha if isinstance(cfg, KernelConfig) else cfg)
    pts, single = _as_points(x)
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    if np.any(r2 == 0.0):
        raise SingularPointError("k_free is singular at the origin")
    fac = -a * c_alpha(a) * r2 ** (-1.0 - 0.5 * a)
    out = np.empty_like(pts)
    out[:, 0] = fac * (-pts[:, 1])
    out[:, 1] = fac * pts[:, 0]
    return out[0] if single else out


def _grad_green_free(pts, a):
    """grad G = -a * c_a * x / |x|^(2+a), rows of pts assumed nonzero."""
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    fac = -a * c_alpha(a) * r2 ** (-1.0 - 0.5 * a)
    return fac[:, None] * pts


def _hess_green_free(pts, a):
    """Second derivatives of G as (n, 2, 2) arrays."""
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    c = c_alpha(a)
    f1 = -a * c * r2 ** (-1.0 - 0.5 * a)
    f2 = a * (a + 2.0) * c * r2 ** (-2.0 - 0.5 * a)
    out = np.empty((pts.shape[0], 2, 2))
    out[:, 0, 0] = f1 + f2 * pts[:, 0] ** 2
    out[:, 1, 1] = f1 + f2 * pts[:, 1] ** 2
    out[:, 0, 1] = f2 * pts[:, 0] * pts[:, 1]
    out[:, 1, 0] = out[:, 0, 1]
    return out


def _reduce(pts):
    """Covering-map reduction plus the mask of points that actually moved.

    Raises when a shifted point lands on a nonzero lattice point (the
    original point is in L*); the origin itself is a regular point of R.
    """
    p = pts.copy()
    p[:, 0] -= np.floor(pts[:, 0] + 0.5)
    shifted = p[:, 0] != pts[:, 0]
    r2 = p[:, 0] ** 2 + p[:, 1] ** 2
    if np.any(shifted & (r2 < _LATTICE_EPS**2)):
        raise LatticeSingularityError(
            "point coincides with a nonzero lattice point"
        )
    return p, shifted


def r_alpha(x, cfg):
    """Lattice correction R(x); smooth on the strip, R(0) = 0."""
    pts, single = _as_points(x)
    p, shifted = _reduce(pts)
    a = cfg.alpha.value
    c = c_alpha(a)
    sums = cfg._sums(p[:, 0], p[:, 1], ("u0",), c)
    out = c * sums["u0"]
    if np.any(shifted):
        m = shifted
        out[m] += green_free(p[m], cfg) - green_free(pts[m], cfg)
    return out[0] if single else out


def r_alpha_grad(x, cfg, order=1):
    """Term-wise differentiated lattice correction.

    order=1 returns grad R with shape (..., 2); order=2 returns the
    symmetric Hessian with shape (..., 2, 2).
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    pts, single = _as_points(x)
    p, shifted = _reduce(pts)
    a = cfg.alpha.value
    c = c_alpha(a)
    ac = a * c
    if order == 1:
        sums = cfg._sums(p[:, 0], p[:, 1], ("u1", "u2"), ac * (1.0 + np.max(np.abs(p[:, 1]))))
        out = np.empty_like(p)
        out[:, 0] = -ac * sums["u1"]
        out[:, 1] = -ac * p[:, 1] * sums["u2"]
        if np.any(shifted):
            m = shifted
            out[m] += _grad_green_free(p[m], a) - _grad_green_free(pts[m], a)
        return out[0] if single else out
    sums = cfg._sums(
        p[:, 0], p[:, 1], ("u2", "u11", "u12", "u22"), ac * (2.0 + a) * (1.0 + np.max(p[:, 1] ** 2))
    )
    out = np.empty((p.shape[0], 2, 2))
    out[:, 0, 0] = -ac * (sums["u2"] - (2.0 + a) * sums["u11"])
    out[:, 0, 1] = ac * (2.0 + a) * p[:, 1] * sums["u12"]
    out[:, 1, 0] = out[:, 0, 1]
    out[:, 1, 1] = -ac * (sums["u2"] - (2.0 + a) * p[:, 1] ** 2 * sums["u22"])
    if np.any(shifted):
        m = shifted
        out[m] += _hess_green_free(p[m], a) - _hess_green_free(pts[m], a)
    return out[0] if single else out


def h_alpha(x, cfg):
    """Image-sum velocity correction H = grad_perp R."""
    pts, single = _as_points(x)
    p, shifted = _reduce(pts)
    a = cfg.alpha.value
    ac = a * c_alpha(a)
    sums = cfg._sums(p[:, 0], p[:, 1], ("u1", "u2"), ac * (1.0 + np.max(np.abs(p[:, 1]))))
    out = np.empty_like(p)
    out[:, 0] = ac * p[:, 1] * sums["u2"]
    out[:, 1] = -ac * sums["u1"]
    if np.any(shifted):
        m = shifted
        out[m] += k_free(p[m], cfg) - k_free(pts[m], cfg)
    return out[0] if single else out


def green_periodic(x, cfg):
    """Periodized kernel G_p = G + R, 1-periodic in x1."""
    pts, single = _as_points(x)
    p, _ = _reduce(pts)
    r2 = p[:, 0] ** 2 + p[:, 1] ** 2
    if np.any(r2 < _LATTICE_EPS**2):
        raise LatticeSingularityError(
            "green_periodic is singular on the lattice"
        )
    a = cfg.alpha.value
    c = c_alpha(a)
    sums = cfg._sums(p[:, 0], p[:, 1], ("u0",), c)
    out = c * r2 ** (-0.5 * a) + c * sums["u0"]
    return out[0] if single else out
