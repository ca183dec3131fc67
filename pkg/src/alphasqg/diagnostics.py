"""Monitored functionals: chord-arc F, energy weights, blow-up horizon,
mollifier safety radius, separation, areas, and the continuity modulus.

The chord-arc functional measures, inversely, how close a curve comes to
self-intersecting or to touching a nonzero lattice point in chord space:

    F_0(eta, beta) = |beta| / |delta_beta(eta)|   (diagonal: 1/|gamma'(eta)|)
    F_j(eta, beta) = 1 / |delta_beta(eta) - (j, 0)|,   j != 0
    F = max(F_0, max_j F_j)

computed per curve; proximity between distinct curves is the job of
`separation`.  Sups are taken over the discrete (eta, beta) grid and then
sharpened by local golden-section refinement around the discrete argmax.

Bounds with non-constructive constants (T*, epsilon_0, A_m) expose the
constant as a parameter with default 1; only the shape of those bounds is
testable.
"""

import csv
import json
import math

import numpy as np

from .contour import eta_grid, sobolev_norm
from .errors import DegenerateChainError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DiagnosticsRecord:
    """One row of monitored quantities at a fixed time."""

    def __init__(self, time, F_inf, S_n_inf, sobolev_m, energy_S, area,
                 separation, A_m):
        self.time = time
        self.F_inf = F_inf
        self.S_n_inf = list(S_n_inf)
        self.sobolev_m = sobolev_m
        self.energy_S = energy_S
        self.area = list(area)
        self.separation = separation
        self.A_m = A_m

    def csv_header(self):
        cols = ["time", "F_inf", "sobolev_m", "energy_S", "separation", "A_m"]
        cols += [f"S_{n}" for n in range(len(self.S_n_inf))]
        cols += [f"area_{i}" for i in range(len(self.area))]
        return cols

    def csv_row(self):
        row = [self.time, self.F_inf, self.sobolev_m, self.energy_S,
               self.separation, self.A_m]
        row += self.S_n_inf
        row += self.area
        return [repr(float(v)) for v in row]

    def to_json(self):
        return json.dumps({
            "time": self.time,
            "F_inf": self.F_inf,
            "S_n_inf": self.S_n_inf,
            "sobolev_m": self.sobolev_m,
            "energy_S": self.energy_S,
            "area": self.area,
            "separation": self.separation,
            "A_m": self.A_m,
        })


class ChordArcResult:
    """Sup of the chord-arc functional and of its components."""

    def __init__(self, F_inf, F0_sup, Fj_sup, argmax):
        self.F_inf = F_inf
        self.F0_sup = F0_sup
        self.Fj_sup = dict(Fj_sup)
        self.argmax = argmax  # (curve index, eta, beta)


def _golden_max(f, lo, hi, iters=60):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
    x = 0.5 * (a + b)
    return x, f(x)


def _curve_F_grid(curve, j_window):
    """Grid values of F_0 and each F_j over (eta_i, beta_l)."""
    M = curve.M
    betas = eta_grid(M)  # same uniform grid for the beta axis
    F0 = np.empty((M, M))
    Fj = {j: np.empty((M, M)) for j in range(-j_window, j_window + 1) if j}
    gp = curve.derivative_samples(1)
    for l, b in enumerate(betas):
        if b == 0.0:
            with np.errstate(divide="ignore"):
                F0[:, l] = 1.0 / np.hypot(gp[:, 0], gp[:, 1])
            d = np.zeros((M, 2))
        else:
            d = curve.delta_samples(b)
            r = np.hypot(d[:, 0], d[:, 1])
            with np.errstate(divide="ignore"):
                F0[:, l] = np.abs(b) / r
        for j in Fj:
            rj = np.hypot(d[:, 0] - j, d[:, 1])
            with np.errstate(divide="ignore"):
                Fj[j][:, l] = 1.0 / rj
    return betas, F0, Fj


def _refine(fun, eta0, beta0, span_eta, span_beta, rounds=3):
    """Coordinate-wise golden-section sharpening of a grid argmax."""
    e, b = eta0, beta0
    val = fun(e, b)
    for _ in range(rounds):
        b, val = _golden_max(lambda t: fun(e, t),
                             max(-np.pi, b - span_beta),
                             min(np.pi, b + span_beta))
        e, val = _golden_max(lambda t: fun(t, b), e - span_eta, e + span_eta)
        span_eta /= 4.0
        span_beta /= 4.0
    return e, b, val


def chord_arc_F(chain, j_window=3, refine=True):
    """Sup of the chord-arc functional over the chain.

    Self-intersection shows up as the +inf sentinel, never an exception.
    The lattice window auto-expands when a curve spans more than one period
    horizontally.
    """
    F0_sup = -np.inf
    Fj_sup = {}
    F_sup = -np.inf
    arg = None
    for ci, curve in enumerate(chain.curves):
        extent = np.ptp(curve.nodes[:, 0]) + abs(curve.winding)
        win = max(j_window, int(np.ceil(extent)) + 1)
        betas, F0, Fj = _curve_F_grid(curve, win)
        i0 = np.unravel_index(np.argmax(F0), F0.shape)
        cand0 = F0[i0]
        eta = eta_grid(curve.M)
        h = 2.0 * np.pi / curve.M

        def f0(e, b, _c=curve):
            if b == 0.0:
                g = _c.eval(np.asarray(e), order=1)
                return 1.0 / np.hypot(g[0], g[1])
            d = _c.eval(np.asarray(e)) - _c.eval(np.asarray(e - b))
            r = np.hypot(d[0], d[1])
            return np.inf if r == 0.0 else abs(b) / r

        if refine and np.isfinite(cand0):
            _, _, cand0 = _refine(f0, eta[i0[0]], betas[i0[1]], h, h)
            cand0 = max(cand0, F0[i0])
        F0_sup = max(F0_sup, cand0)
        if cand0 > F_sup:
            F_sup = cand0
            arg = (ci, eta[i0[0]], betas[i0[1]], 0)
        for j, grid in Fj.items():
            ij = np.unravel_index(np.argmax(grid), grid.shape)
            cand = grid[ij]

            def fj(e, b, _c=curve, _j=j):
                d = _c.eval(np.asarray(e)) - _c.eval(np.asarray(e - b))
                r = np.hypot(d[0] - _j, d[1])
                return np.inf if r == 0.0 else 1.0 / r

            if refine and np.isfinite(cand):
                _, _, cand = _refine(fj, eta[ij[0]], betas[ij[1]], h, h)
                cand = max(cand, grid[ij])
            Fj_sup[j] = max(Fj_sup.get(j, -np.inf), cand)
            if cand > F_sup:
                F_sup = cand
                arg = (ci, eta[ij[0]], betas[ij[1]], j)
    return ChordArcResult(F_sup, F0_sup, Fj_sup, arg)


def chain_l2_norm(chain):
    """L2 norm of the de-wound chain (sum of per-curve integrals)."""
    total = 0.0
    for curve in chain.curves:
        p = curve.periodic_part()
        total += 2.0 * np.pi * np.mean(p[:, 0] ** 2 + p[:, 1] ** 2)
    return math.sqrt(total)


def chain_sobolev_norm(chain, m):
    """H^m norm of the chain (root sum of squares over curves)."""
    return math.sqrt(sum(sobolev_norm(c, m) ** 2 for c in chain.curves))


def weights_S(chain, n, F_inf, alpha):
    """Energy weight S_n built from the chord-arc sup and the L2 norm.

    S_0 = F^alpha + ||gamma||^2; S_n = sum_{j=1..n} (F^(j+alpha) +
    ||gamma||^j) for n >= 1.
    """
    a = float(getattr(alpha, "value", alpha))
    l2 = chain_l2_norm(chain)
    if n == 0:
        return F_inf**a + l2**2
    return sum(F_inf ** (j + a) + l2**j for j in range(1, n + 1))


def blowup_bound_T(S0, m, C):
    """Guaranteed-existence horizon T* = 1/((2m+2) C S0^(2m+2)).

    C is the analysis' non-constructive constant, supplied by the caller.
    """
    if S0 <= 0.0 or C <= 0.0:
        raise ValueError("S0 and C must be positive")
    return 1.0 / ((2 * m + 2) * C * S0 ** (2 * m + 2))


def energy_bound(S0, m, C, T):
    """Running energy bound; equals S0 at T = 0 and blows up at T*."""
    base = S0 ** (-(2 * m + 2)) - (2 * m + 2) * C * T
    if base <= 0.0:
        return math.inf
    return base ** (-1.0 / (2 * m + 2))


def epsilon0(chain, C=1.0, F0_inf=None):
    """Mollifier safety radius from the initial chord-arc data.

    eps0 = C/(F0 * ||gamma||_H3) * min(1/(F0 * ||gamma||_H3^2), 1), with C
    the analysis constant (default 1).
    """
    h3 = chain_sobolev_norm(chain, 3)
    if h3 == 0.0:
        raise DegenerateChainError("epsilon0 needs a nonzero H^3 norm")
    if F0_inf is None:
        F0_inf = chord_arc_F(chain).F0_sup
    return C / (F0_inf * h3) * min(1.0 / (F0_inf * h3**2), 1.0)


def separation(chain):
    """Minimum distance between distinct curves, periodic images included.

    A single curve never competes with its own translates: +inf for n = 1.
    """
    if len(chain.curves) < 2:
        return math.inf
    best = math.inf
    for i, a in enumerate(chain.curves):
        for b in chain.curves[i + 1 :]:
            for shift in (-1.0, 0.0, 1.0):
                d = a.nodes[:, None, :] - b.nodes[None, :, :]
                d = d.copy()
                d[:, :, 0] -= shift
                best = min(best, float(np.min(np.hypot(d[:, :, 0], d[:, :, 1]))))
    return best


def patch_area(chain):
    """Signed area per curve, computed spectrally.

    Closed curves use the shoelace integral (1/2) oint (x1 dx2 - x2 dx1);
    winding curves return the signed area between the curve and the axis
    per period, int x2 d x1 (so a front at height h gives +h per period).
    """
    out = []
    for curve in chain.curves:
        h = 2.0 * np.pi / curve.M
        g = curve.nodes
        gp = curve.derivative_samples(1)
        if curve.winding == 0:
            out.append(0.5 * h * float(np.sum(g[:, 0] * gp[:, 1] - g[:, 1] * gp[:, 0])))
        else:
            out.append(h * float(np.sum(g[:, 1] * gp[:, 0])))
    return out


def modulus_mu(x):
    """The continuity modulus: 0 at 0, -e x log x below 1/e, x/e above.

    This is the source text's literal definition; it is discontinuous at
    x = 1/e (see modulus_min for the associated minimum, which equals 1
    there).
    """
    if x < 0.0:
        raise ValueError("modulus_mu needs x >= 0")
    if x == 0.0:
        return 0.0
    if x < 1.0 / math.e:
        return -math.e * x * math.log(x)
    return x / math.e


def modulus_min(a):
    """min(-e a log a, 1) for a > 0, the minimum the modulus is built from."""
    if a <= 0.0:
        raise ValueError("modulus_min needs a > 0")
    return min(-math.e * a * math.log(a), 1.0)


def bound_coefficient_Am(chain, m, alpha, F_inf=None):
    """Operator-bound coefficient ||S_m||_inf * sum_{j=0..m+1} ||gamma||^j_{H^{m+1}},
    up to the analysis' constant (taken as 1)."""
    if F_inf is None:
        F_inf = chord_arc_F(chain).F_inf
    s = weights_S(chain, m, F_inf, alpha)
    h = chain_sobolev_norm(chain, m + 1)
    return s * sum(h**j for j in range(m + 2))


def compute_record(chain, time, m, alpha, C=1.0):
    """Assemble the full diagnostics row for one chain state."""
    F = chord_arc_F(chain)
    S_list = [weights_S(chain, n, F.F_inf, alpha) for n in range(m + 1)]
    hm = chain_sobolev_norm(chain, m)
    return DiagnosticsRecord(
        time=time,
        F_inf=F.F_inf,
        S_n_inf=S_list,
        sobolev_m=hm,
        energy_S=F.F_inf + hm**2,
        area=patch_area(chain),
        separation=separation(chain),
        A_m=bound_coefficient_Am(chain, min(m, 2), alpha, F_inf=F.F_inf),
    )


def write_csv_header(path, record):
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerow(record.csv_header())


def append_csv_row(path, record):
    with open(path, "a", newline="") as fh:
        csv.writer(fh).writerow(record.csv_row())
