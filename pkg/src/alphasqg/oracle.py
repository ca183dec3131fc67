"""Slow, independent reference computations used by the tests.

Nothing here shares code with the fast paths: velocities come from 2-D
midpoint quadrature of the gradient kernel over the patch interior plus a
direct sum over lattice images, and the lattice correction comes from a
line integral of the image-sum velocity field along the straight ray from
the origin.  Simplicity over speed is deliberate.
"""

import math

import numpy as np
from matplotlib.path import Path

from .errors import BoundaryProximityError, SingularPointError


class AreaQuadratureConfig:
    """Resolution contract for the area-integral velocity oracle."""

    def __init__(self, cells_per_unit=512, image_radius=300, refine_factor=8):
        if cells_per_unit < 64:
            raise ValueError("cells_per_unit must be at least 64")
        self.cells_per_unit = int(cells_per_unit)
        self.image_radius = int(image_radius)
        self.refine_factor = int(refine_factor)


def _c_alpha(alpha):
    return math.gamma(0.5 * alpha) / (
        math.pi * 2.0 ** (2.0 - alpha) * math.gamma(1.0 - 0.5 * alpha)
    )


def _k_free_sum(dx, dy, alpha, image_radius):
    """sum over lattice images of K(d - (j,0)) for arrays of differences.

    The +j and -j images are paired so the truncation tail decays like
    R^-(1+alpha), and the partial sums at radius R/2 and R are Richardson
    extrapolated against that rate.
    """
    ac = alpha * _c_alpha(alpha)

    def k(ddx):
        r2 = ddx * ddx + dy * dy
        f = -ac * r2 ** (-1.0 - 0.5 * alpha)
        return f * (-dy), f * ddx

    ux, uy = k(dx)
    half = image_radius // 2
    ux_half = uy_half = None
    for j in range(1, image_radius + 1):
        for s in (j, -j):
            kx, ky = k(dx - s)
            ux = ux + kx
            uy = uy + ky
        if j == half:
            ux_half = ux.copy()
            uy_half = uy.copy()
    fac = 1.0 / (2.0 ** (1.0 + alpha) - 1.0)
    return ux + fac * (ux - ux_half), uy + fac * (uy - uy_half)


def _patch_cells(chain, cfg):
    """Midpoint cells (centers and areas) covering the chain's interior.

    Closed curves are filled by even-odd polygon inclusion weighted by
    orientation sign; a two-front layer (winding curves) is filled between
    its lower and upper boundary over one horizontal period.  Cells whose
    corners disagree are subdivided refine_factor x refine_factor once.
    """
    closed = [c for c in chain.curves if c.winding == 0]
    wound = [c for c in chain.curves if c.winding != 0]
    h = 1.0 / cfg.cells_per_unit
    centers = []
    weights = []

    def classify(lo, hi, inside):
        nx = max(2, int(math.ceil((hi[0] - lo[0]) / h)))
        ny = max(2, int(math.ceil((hi[1] - lo[1]) / h)))
        xs = lo[0] + (hi[0] - lo[0]) * np.arange(nx + 1) / nx
        ys = lo[1] + (hi[1] - lo[1]) * np.arange(ny + 1) / ny
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        corner = inside(gx.ravel(), gy.ravel()).reshape(nx + 1, ny + 1)
        full = corner[:-1, :-1] & corner[1:, :-1] & corner[:-1, 1:] & corner[1:, 1:]
        empty = ~(corner[:-1, :-1] | corner[1:, :-1] | corner[:-1, 1:] | corner[1:, 1:])
        part = ~(full | empty)
        dx = xs[1] - xs[0]
        dy = ys[1] - ys[0]
        cx = 0.5 * (xs[:-1] + xs[1:])
        cy = 0.5 * (ys[:-1] + ys[1:])
        fx, fy = np.meshgrid(cx, cy, indexing="ij")
        centers.append(np.column_stack([fx[full], fy[full]]))
        weights.append(np.full(int(full.sum()), dx * dy))
        # one round of subdivision on the boundary band
        if part.any():
            r = cfg.refine_factor
            off = (np.arange(r) + 0.5) / r
            ii, jj = np.nonzero(part)
            subx = xs[ii][:, None, None] + dx * off[None, :, None]
            suby = ys[jj][:, None, None] + dy * off[None, None, :]
            subx = np.broadcast_to(subx, (ii.size, r, r)).ravel()
            suby = np.broadcast_to(suby, (ii.size, r, r)).ravel()
            keep = inside(subx, suby)
            centers.append(np.column_stack([subx[keep], suby[keep]]))
            weights.append(np.full(int(keep.sum()), dx * dy / (r * r)))

    for curve in closed:
        # densify to a fine polygon so the inscribed-area deficit (which
        # scales like the squared node spacing) is negligible
        fine = 2.0 * np.pi * (np.arange(4096) / 4096.0) - np.pi
        g = curve.eval(fine)
        poly = Path(g)
        sign = 1.0 if np.sum(g[:, 0] * np.roll(g[:, 1], -1) - g[:, 1] * np.roll(g[:, 0], -1)) > 0 else -1.0
        lo = g.min(axis=0) - 2 * h
        hi = g.max(axis=0) + 2 * h

        def inside(px, py, _poly=poly):
            return _poly.contains_points(np.column_stack([px, py]))

        n0 = len(weights)
        classify(lo, hi, inside)
        for i in range(n0, len(weights)):
            weights[i] = weights[i] * sign

    if wound:
        if len(wound) != 2 or closed:
            raise ValueError(
                "the area oracle supports a single two-front layer for "
                "winding geometries"
            )
        lowc, topc = sorted(wound, key=lambda c: c.nodes[:, 1].mean())

        def height(curve, px):
            # winding-1 fronts have x1 = eta/(2 pi) up to a periodic shift,
            # so the boundary height at abscissa px is y(2 pi px - pi)
            vals = curve.eval(2.0 * np.pi * (px % 1.0) - np.pi)
            return vals[:, 1]

        def inside(px, py):
            return (py > height(lowc, px)) & (py < height(topc, px))

        lo = (0.0, lowc.nodes[:, 1].min() - 2 * h)
        hi = (1.0, topc.nodes[:, 1].max() + 2 * h)
        classify(lo, hi, inside)

    return np.concatenate(centers), np.concatenate(weights)


def velocity_area_integral(x, chain, alpha, cfg=None):
    """u(x) by 2-D quadrature of the gradient kernel over the patch."""
    cfg = cfg or AreaQuadratureConfig()
    x = np.asarray(x, dtype=float)
    alpha = float(getattr(alpha, "value", alpha))
    centers, weights = _patch_cells(chain, cfg)
    h = 1.0 / cfg.cells_per_unit
    d = np.hypot(x[0] - centers[:, 0], x[1] - centers[:, 1])
    if np.min(d) < 2.0 * h:
        raise BoundaryProximityError(
            "oracle evaluation point too close to the patch boundary"
        )
    ux, uy = _k_free_sum(
        x[0] - centers[:, 0], x[1] - centers[:, 1], alpha, cfg.image_radius
    )
    return np.array([np.sum(weights * ux), np.sum(weights * uy)])


def r_alpha_path_integral(x, alpha, n_images=60000, n_nodes=96):
    """Lattice correction by the line integral of the image-sum velocity.

    R(x) = int_0^1 H(t x) . x_perp dt along the straight ray from the
    origin, with H summed directly over images and Richardson-extrapolated
    in the truncation radius.
    """
    x = np.asarray(x, dtype=float)
    if x[0] == 0.0 and x[1] == 0.0:
        return 0.0
    if x[1] == 0.0 and abs(x[0]) >= 1.0:
        raise SingularPointError("ray from the origin passes through a lattice point")
    z, w = np.polynomial.legendre.leggauss(n_nodes)
    t = 0.5 * (z + 1.0)
    wt = 0.5 * w
    px = t * x[0]
    py = t * x[1]
    ac = alpha * _c_alpha(alpha)

    def h_dot(n):
        """H(p) . x_perp with images summed to radius n."""
        total = np.zeros(t.size)
        block = 4096
        for j0 in range(1, n + 1, block):
            js = np.arange(j0, min(j0 + block, n + 1), dtype=float)
            for s in (1.0, -1.0):
                dx = px[:, None] - s * js[None, :]
                r2 = py[:, None] ** 2 + dx * dx
                f = -ac * r2 ** (-1.0 - 0.5 * alpha)
                # H = (f * (-p2), f * d1); dot with x_perp = (-x2, x1)
                total += np.sum(f * (py[:, None] * x[1] + dx * x[0]), axis=1)
        return total
    # Richardson in the image radius: tail ~ C n^-(1+alpha)
    half = h_dot(n_images // 2)
    fullv = h_dot(n_images)
    p = 1.0 + alpha
    extrap = fullv + (fullv - half) / (2.0**p - 1.0)
    return float(np.sum(wt * extrap))
