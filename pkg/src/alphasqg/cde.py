"""Velocity operator for the contour dynamics equation on the periodic strip.

The boundary velocity at a node is

    L(gamma)(eta) = int_T G_p(delta_beta(eta)) d/d_eta delta_beta(eta) d beta,

with delta_beta(eta) = gamma(eta) - gamma(eta - beta) and G_p the periodized
kernel.  The integrand behaves like |beta|^(1-alpha) at beta = 0, so the
beta-quadrature combines two pieces:

  * near field |beta| <= beta0: substitute beta = sign(s) |s|^(2/(2-alpha)),
    which flattens the fractional power to ~|s|, then Gauss-Legendre per half;
  * far field beta in [beta0, 2 pi - beta0] (the integrand is 2 pi periodic in
    beta for every winding): uniform trapezoid on the curve grid, sharpened by
    Euler-Maclaurin endpoint corrections whose one-sided derivatives are
    finite differences of grid samples, so the whole rule is one fixed list
    of (beta, weight) pairs.

The rule is symmetric under beta -> -beta, which is what makes the two
pairing forms of `pairing` agree to aliasing level.

Cross-curve interactions (default "chain" mode) use the tangentially
adjusted integrand G_p(gamma_c(eta) - gamma_c'(beta)) (gamma_c'(eta) -
gamma_c''(beta)); tangential modifications do not change the normal motion,
and this form makes a flat two-boundary layer an exact steady state.  The
"self" mode restricts the operator to same-curve interactions.
"""

import numpy as np

from . import kernels
from .errors import BoundaryProximityError, SelfIntersectionError


class QuadratureConfig:
    """Beta-quadrature contract for the CDE integrals.

    near_field_cells sets beta0 = cells * (2 pi / M); near_field_order is
    the Gauss-Legendre count per half of the graded near-field rule.
    """

    def __init__(
        self,
        near_field_cells=4,
        near_field_order=24,
        endpoint_correction=True,
        boundary_floor=1e-3,
        interaction="chain",
    ):
        if near_field_cells < 3:
            raise ValueError("near_field_cells must be at least 3")
        if near_field_order < 8:
            raise ValueError("near_field_order must be at least 8")
        if interaction not in ("chain", "self"):
            raise ValueError("interaction must be 'chain' or 'self'")
        self.near_field_cells = int(near_field_cells)
        self.near_field_order = int(near_field_order)
        self.endpoint_correction = bool(endpoint_correction)
        self.boundary_floor = float(boundary_floor)
        self.interaction = interaction


class MollifierConfig:
    """Friedrichs mollifier phi_eps(x) = (1/eps) phi1(x/eps) with the even
    bump phi1(x) proportional to exp(-1/(1-x^2)) on (-1, 1), normalized to
    unit mass on the discrete grid."""

    def __init__(self, epsilon):
        if not 0.0 < epsilon < 2.0 * np.pi:
            raise ValueError("epsilon must lie in (0, 2 pi)")
        self.epsilon = float(epsilon)

    def weights(self, M):
        """Discrete kernel on the M-point grid, h * sum = 1 exactly."""
        h = 2.0 * np.pi / M
        off = ((np.arange(M) + M // 2) % M - M // 2) * h
        x = off / self.epsilon
        w = np.zeros(M)
        inside = np.abs(x) < 1.0
        w[inside] = np.exp(-1.0 / (1.0 - x[inside] ** 2))
        total = h * w.sum()
        if total == 0.0:
            raise ValueError("epsilon below grid resolution: empty mollifier")
        return w / total


def mollify_samples(samples, moll):
    """Circular convolution phi_eps * f of per-node samples (M,) or (M, d)."""
    samples = np.asarray(samples, dtype=float)
    M = samples.shape[0]
    h = 2.0 * np.pi / M
    ker = np.fft.fft(moll.weights(M)) * h
    if samples.ndim == 1:
        return np.fft.ifft(np.fft.fft(samples) * ker).real
    return np.fft.ifft(np.fft.fft(samples, axis=0) * ker[:, None], axis=0).real


def mollify_curve(curve, moll):
    """phi_eps * gamma: convolve the de-wound part, keep the winding (the
    linear part is invariant under an even unit-mass kernel)."""
    from .contour import Curve, eta_grid

    smooth = mollify_samples(curve.periodic_part(), moll)
    smooth[:, 0] += curve._slope * (eta_grid(curve.M) + np.pi)
    return Curve(smooth, curve.winding)


def beta_rule(M, alpha, quad):
    """The fixed (beta, weight) list discretizing the beta-integral."""
    h = 2.0 * np.pi / M
    c = quad.near_field_cells
    if c >= M // 2:
        raise ValueError("near field wider than half the period")
    beta0 = c * h
    # far field trapezoid on [beta0, 2 pi - beta0]
    j = np.arange(c - 2, M - c + 3)
    far_b = j * h
    far_w = np.zeros(j.size)
    far_w[2:-2] = h
    far_w[2] = far_w[-3] = 0.5 * h
    if quad.endpoint_correction:
        # int = T - h^2/12 (g'(b) - g'(a)) + h^4/720 (g'''(b) - g'''(a));
        # both derivatives from 5-point central differences on the grid
        fd1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
        fd3 = np.array([-1.0, 2.0, 0.0, -2.0, 1.0]) / (2.0 * h**3)
        corr = (h**2 / 12.0) * fd1 - (h**4 / 720.0) * fd3
        far_w[:5] += corr
        far_w[-5:] -= corr
    # graded near field on [-beta0, beta0]
    p = 2.0 / (2.0 - alpha)
    s0 = beta0 ** (1.0 / p)
    xg, wg = np.polynomial.legendre.leggauss(quad.near_field_order)
    s = 0.5 * s0 * (xg + 1.0)
    ws = 0.5 * s0 * wg
    near_b = s**p
    near_w = ws * p * s ** (p - 1.0)
    betas = np.concatenate([-near_b[::-1], near_b, far_b])
    weights = np.concatenate([near_w[::-1], near_w, far_w])
    return betas, weights


def _self_velocity(curve, kcfg, rule, periodic=True):
    """Same-curve contribution of L at every node, one curve."""
    betas, weights = rule
    M = curve.M
    live = weights != 0.0
    idx = np.flatnonzero(~live)
    deltas = np.empty((betas.size, M, 2))
    ddelta = np.empty((betas.size, M, 2))
    for k, b in enumerate(betas):
        deltas[k] = curve.delta_samples(b)
        ddelta[k] = curve.delta_derivative_samples(b)
    flat = deltas.reshape(-1, 2)
    if periodic:
        gp = kernels.green_periodic(flat, kcfg)
    else:
        gp = kernels.green_free(flat, kcfg)
    gp = gp.reshape(betas.size, M)
    if idx.size:
        gp[idx] = 0.0  # zero-weight FD-only nodes contribute nothing anyway
    return np.einsum("k,km,kmd->md", weights, gp, ddelta)


def _cross_velocity(target, source, kcfg):
    """Contribution of a distinct source curve to the target curve's nodes,
    with the tangential adjustment that keeps flat layers steady."""
    M = source.M
    h = 2.0 * np.pi / M
    diffs = target.nodes[:, None, :] - source.nodes[None, :, :]
    gp = kernels.green_periodic(diffs.reshape(-1, 2), kcfg).reshape(M, M)
    t_target = target.derivative_samples(1)
    t_source = source.derivative_samples(1)
    out = h * gp.sum(axis=1)[:, None] * t_target
    out -= h * (gp @ t_source)
    return out


def cde_velocity(chain, kcfg, quad=None, f_ceiling=None):
    """L(gamma) at every node of every curve; shape (n_curves, M, 2)."""
    quad = quad or QuadratureConfig()
    if f_ceiling is not None:
        from .diagnostics import chord_arc_F

        if chord_arc_F(chain).F_inf > f_ceiling:
            raise SelfIntersectionError("chord-arc functional above the ceiling")
    rule = beta_rule(chain.M, kcfg.alpha.value, quad)
    out = np.empty((len(chain.curves), chain.M, 2))
    for i, curve in enumerate(chain.curves):
        v = _self_velocity(curve, kcfg, rule)
        if quad.interaction == "chain":
            for jc, other in enumerate(chain.curves):
                if jc != i:
                    v += _cross_velocity(curve, other, kcfg)
        out[i] = v
    return out


def cde_velocity_mollified(chain, kcfg, quad, moll):
    """Regularized operator phi_eps * L(phi_eps * gamma)."""
    from .contour import Chain

    smooth = Chain([mollify_curve(c, moll) for c in chain.curves])
    raw = cde_velocity(smooth, kcfg, quad)
    return np.stack([mollify_samples(raw[i], moll) for i in range(raw.shape[0])])


def velocity_at_point(x, chain, kcfg, quad=None):
    """Constitutive velocity u(x) = -sum_curves int G_p(x - gamma) gamma' d beta.

    The minus sign comes from Green's theorem: the area integral of the
    perpendicular-gradient kernel over the patch equals minus the boundary
    circulation of the scalar kernel for a positively oriented boundary.
    """
    quad = quad or QuadratureConfig()
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = x[None, :] if single else x
    out = np.zeros_like(pts)
    for curve in chain.curves:
        h = 2.0 * np.pi / curve.M
        diffs = pts[:, None, :] - curve.nodes[None, :, :]
        red = diffs.copy().reshape(-1, 2)
        red[:, 0] -= np.floor(red[:, 0] + 0.5)
        dist = np.hypot(red[:, 0], red[:, 1])
        if np.min(dist) < quad.boundary_floor:
            raise BoundaryProximityError(
                "evaluation point within the boundary floor of the chain"
            )
        gp = kernels.green_periodic(diffs.reshape(-1, 2), kcfg)
        gp = gp.reshape(pts.shape[0], curve.M)
        out -= h * gp @ curve.derivative_samples(1)
    return out[0] if single else out


def pairing(chain, m, kcfg, quad=None, free_space_only=False):
    """The inner product (d^m gamma, d^m L(gamma)) in its two forms.

    Returns (direct, symmetric): the direct form pairs d^m gamma with d^m of
    the computed velocity; the symmetric form is the half double integral
    (1/2) int int d^m[G(delta) d_eta delta] . d^m delta d beta d eta.  Both
    use the identical beta rule, restricted to same-curve interactions.
    With free_space_only the kernel is the free-space part alone, whose
    m = 0 symmetric form is a perfect derivative (continuum value 0).
    """
    quad = quad or QuadratureConfig()
    rule = beta_rule(chain.M, kcfg.alpha.value, quad)
    betas, weights = rule
    h = 2.0 * np.pi / chain.M
    direct = 0.0
    symmetric = 0.0
    for curve in chain.curves:
        M = curve.M
        k = np.fft.fftfreq(M, d=1.0 / M)
        dm = (1j * k) ** m
        if M % 2 == 0 and m > 0:
            dm[M // 2] = 0.0

        def ddm(samples):
            return np.fft.ifft(np.fft.fft(samples, axis=0) * dm[:, None], axis=0).real

        gm = ddm(curve.periodic_part())
        if m == 1:
            gm[:, 0] += curve._slope
        v = _self_velocity(curve, kcfg, rule, periodic=not free_space_only)
        direct += h * np.sum(gm * ddm(v))
        for b, w in zip(betas, weights):
            if w == 0.0:
                continue
            d = curve.delta_samples(b)
            dd = curve.delta_derivative_samples(b)
            if free_space_only:
                g = kernels.green_free(d, kcfg)
            else:
                g = kernels.green_periodic(d, kcfg)
            integrand = g[:, None] * dd
            if m == 0:
                dmd = d
            elif m == 1:
                dmd = dd
            else:
                dmd = ddm(d)
            symmetric += 0.5 * w * h * np.sum(ddm(integrand) * dmd)
    return direct, symmetric
