"""Discretized quasi-closed chains on the horizontally periodic strip.

A curve is sampled at the uniform parameters eta_i = -pi + 2*pi*i/M and may
pick up an integer horizontal offset per period (its winding w), so that
gamma(eta + 2*pi) = gamma(eta) + (w, 0).  Curves are stored de-wound: the
linear part (w/(2*pi)) * (eta + pi) * e1 is split off and only the periodic
remainder P(eta) goes through the FFT, which keeps every spectral operation
free of the seam discontinuity.

All parameter-space operations (derivatives, interpolation, resampling,
Sobolev norms) act on the trigonometric interpolant of P; the winding
re-enters only where the reconstruction needs it (first derivatives get the
constant (w/(2*pi), 0), chord differences get (w/(2*pi)) * beta * e1).
"""

import numpy as np

from .errors import AccuracyGuardError


def eta_grid(M):
    """Uniform parameter grid eta_i = -pi + 2*pi*i/M, i = 0..M-1."""
    return -np.pi + 2.0 * np.pi * np.arange(M) / M


class SobolevIndex:
    """Derivative count for the energy norms; the well-posedness theory
    needs at least three derivatives."""

    __slots__ = ("m",)

    def __init__(self, m):
        m = int(m)
        if m < 3:
            raise ValueError("SobolevIndex requires m >= 3")
        self.m = m

    def __repr__(self):
        return f"SobolevIndex({self.m})"


def _m_value(m):
    return int(getattr(m, "m", m))


class Curve:
    """One closed or quasi-closed curve on a uniform M-point grid.

    nodes: (M, 2) array of samples gamma(eta_i); winding: integer w.
    Immutable after construction; spectral data is computed once.
    """

    def __init__(self, nodes, winding=0, min_node_spacing=0.0):
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 2:
            raise ValueError("nodes must have shape (M, 2)")
        M = nodes.shape[0]
        if M < 16 or M % 2:
            raise ValueError("node count must be even and at least 16")
        self.M = M
        self.winding = int(winding)
        self.nodes = nodes.copy()
        self.nodes.setflags(write=False)
        eta = eta_grid(M)
        self._slope = self.winding / (2.0 * np.pi)
        periodic = nodes.copy()
        periodic[:, 0] -= self._slope * (eta + np.pi)
        self._coef = np.fft.fft(periodic, axis=0) / M
        self._k = np.fft.fftfreq(M, d=1.0 / M)
        if min_node_spacing > 0.0:
            d = np.diff(np.vstack([nodes, nodes[0] + [self.winding, 0.0]]), axis=0)
            if np.min(np.hypot(d[:, 0], d[:, 1])) < min_node_spacing:
                raise ValueError("consecutive nodes closer than the spacing floor")

    # ---- spectral machinery -------------------------------------------------

    def _deriv_coef(self, order):
        if order == 0:
            return self._coef
        mult = (1j * self._k) ** order
        if self.M % 2 == 0:
            mult[self.M // 2] = 0.0  # drop the asymmetric Nyquist mode
        return self._coef * mult[:, None]

    def periodic_part(self):
        """Samples of the de-wound periodic part P at the nodes."""
        out = self.nodes.copy()
        out[:, 0] -= self._slope * (eta_grid(self.M) + np.pi)
        return out

    def eval(self, etas, order=0):
        """Trigonometric interpolation of gamma (or its derivative) at
        arbitrary parameters; exact on the grid for band-limited curves."""
        etas = np.asarray(etas, dtype=float)
        theta = np.atleast_1d(etas) + np.pi
        phase = np.exp(1j * np.outer(theta, self._k))
        out = (phase @ self._deriv_coef(order)).real
        if order == 0:
            out[:, 0] += self._slope * theta
        elif order == 1:
            out[:, 0] += self._slope
        return out[0] if etas.ndim == 0 else out

    def shifted_samples(self, beta, order=0):
        """Samples of gamma (or a derivative) at eta_i - beta for all i.

        Uses spectral modulation, so a uniform shift costs one FFT.
        """
        coef = self._deriv_coef(order) * np.exp(-1j * self._k * beta)[:, None]
        out = np.fft.ifft(coef * self.M, axis=0).real
        if order == 0:
            out[:, 0] += self._slope * (eta_grid(self.M) + np.pi - beta)
        elif order == 1:
            out[:, 0] += self._slope
        return out

    def derivative_samples(self, order):
        """d^order gamma / d eta^order at the nodes."""
        if order > self.M // 4:
            raise AccuracyGuardError(
                f"derivative order {order} too high for M = {self.M}"
            )
        out = np.fft.ifft(self._deriv_coef(order) * self.M, axis=0).real
        if order == 1:
            out[:, 0] += self._slope
        return out

    def delta_samples(self, beta):
        """delta_beta(eta_i) = gamma(eta_i) - gamma(eta_i - beta) at all nodes."""
        coef = self._coef * (1.0 - np.exp(-1j * self._k * beta))[:, None]
        out = np.fft.ifft(coef * self.M, axis=0).real
        out[:, 0] += self._slope * beta
        return out

    def delta_derivative_samples(self, beta):
        """d/d eta of delta_beta at all nodes (winding constants cancel)."""
        mult = 1j * self._k * (1.0 - np.exp(-1j * self._k * beta))
        if self.M % 2 == 0:
            mult[self.M // 2] = 0.0
        return np.fft.ifft(self._coef * mult[:, None] * self.M, axis=0).real


class Chain:
    """An ordered family of curves sharing one grid size."""

    def __init__(self, curves):
        curves = list(curves)
        if not curves:
            raise ValueError("a chain needs at least one curve")
        M = curves[0].M
        if any(c.M != M for c in curves):
            raise ValueError("all curves in a chain must share one grid size")
        self.curves = tuple(curves)
        self.M = M

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)


def delta(chain, curve_index, eta_index, beta):
    """Chord difference delta_beta(eta_i) = gamma(eta_i) - gamma(eta_i - beta).

    Off-grid eta - beta is handled by trigonometric interpolation of the
    de-wound part; the winding contributes (w/(2*pi)) * beta horizontally,
    which keeps the difference well defined across the parameter seam.
    """
    curve = chain.curves[curve_index]
    eta = eta_grid(curve.M)[eta_index]
    return curve.eval(np.asarray(eta)) - curve.eval(np.asarray(eta - beta))


def spectral_derivative(curve, order):
    """d^order gamma at the nodes via Fourier differentiation."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return curve.derivative_samples(order)


def sobolev_norm(curve, m):
    """H^m norm (non-normalized d eta measure on [-pi, pi]).

    The position term uses the de-wound periodic part; the winding enters
    through the first derivative's constant horizontal component.
    """
    m = _m_value(m)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if curve.M < 4 * m:
        raise AccuracyGuardError(f"H^{m} norm needs M >= {4 * m}, got {curve.M}")
    coef = curve._coef
    k = curve._k
    total = np.sum(np.abs(coef) ** 2)
    for j in range(1, m + 1):
        cj = coef * (1j * k[:, None]) ** j
        if curve.M % 2 == 0:
            cj[curve.M // 2] = 0.0
        if j == 1:
            cj = cj.copy()
            cj[0, 0] += curve._slope
        total += np.sum(np.abs(cj) ** 2)
    return float(np.sqrt(2.0 * np.pi * total))


def resample(curve, new_M):
    """Trigonometric resampling onto a new uniform grid, winding preserved."""
    new_M = int(new_M)
    if new_M < 16 or new_M % 2:
        raise ValueError("new_M must be even and at least 16")
    M = curve.M
    coef = curve._coef
    new_coef = np.zeros((new_M, 2), dtype=complex)
    if new_M >= M:
        h = M // 2
        new_coef[:h] = coef[:h]
        new_coef[new_M - (M - h):] = coef[h:]
        # split the old Nyquist mode symmetrically so the interpolant is even
        if new_M > M:
            ny = coef[h] / 2.0
            new_coef[h] = ny
            new_coef[new_M - h] = ny
    else:
        h = new_M // 2
        new_coef[:h] = coef[:h]
        new_coef[h + 1 :] = coef[M - new_M + h + 1 : M]
        new_coef[h] = coef[h] + coef[M - h]
    nodes = np.fft.ifft(new_coef * new_M, axis=0).real
    nodes[:, 0] += curve._slope * (eta_grid(new_M) + np.pi)
    return Curve(nodes, curve.winding)
