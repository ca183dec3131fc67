"""Pure-numpy backend for the truncated lattice sums.

All sums run over the nonzero integer images j = 1..N in both horizontal
directions.  Six raw accumulators cover everything the public kernel surface
needs (the periodic correction, its first and second derivatives, and the
image-sum velocity kernel):

    u0  = sum  s_j^(-a/2) - |j|^(-a)
    u1  = sum  (x1 - j) * s_j^(-1-a/2)
    u2  = sum  s_j^(-1-a/2)
    u11 = sum  (x1 - j)^2 * s_j^(-2-a/2)
    u12 = sum  (x1 - j) * s_j^(-2-a/2)
    u22 = sum  s_j^(-2-a/2)

with s_j = x2^2 + (x1 - j)^2.
"""

import numpy as np

KINDS = ("u0", "u1", "u2", "u11", "u12", "u22")

_J_BLOCK = 128


def term_values(x1, x2, alpha, t, sigma, kinds):
    """Evaluate the raw summand at real offsets t > 0 in direction sigma.

    x1, x2: point arrays of shape (n,); t: offsets of shape (m,).
    Returns a dict kind -> array of shape (n, m).
    """
    d = x1[:, None] - sigma * t[None, :]
    s = x2[:, None] ** 2 + d * d
    out = {}
    sa = None
    s1 = None
    s2 = None
    if "u0" in kinds:
        sa = s ** (-0.5 * alpha)
        out["u0"] = sa - t[None, :] ** (-alpha)
    if "u1" in kinds or "u2" in kinds:
        s1 = (sa / s) if sa is not None else s ** (-1.0 - 0.5 * alpha)
        if "u1" in kinds:
            out["u1"] = d * s1
        if "u2" in kinds:
            out["u2"] = s1
    if "u11" in kinds or "u12" in kinds or "u22" in kinds:
        if s1 is None:
            s1 = s ** (-1.0 - 0.5 * alpha)
        s2 = s1 / s
        if "u11" in kinds:
            out["u11"] = d * d * s2
        if "u12" in kinds:
            out["u12"] = d * s2
        if "u22" in kinds:
            out["u22"] = s2
    return out


def direct_sums(x1, x2, alpha, N, kinds):
    """Sum the raw lattice terms over j = 1..N, both directions.

    Returns a dict kind -> array of shape (n,).
    """
    n = x1.shape[0]
    acc = {k: np.zeros(n) for k in kinds}
    x2sq = x2 * x2
    for j0 in range(1, N + 1, _J_BLOCK):
        t = np.arange(j0, min(j0 + _J_BLOCK, N + 1), dtype=float)
        for sigma in (1.0, -1.0):
            d = x1[:, None] - sigma * t[None, :]
            s = x2sq[:, None] + d * d
            sa = s1 = None
            if "u0" in kinds:
                sa = s ** (-0.5 * alpha)
                acc["u0"] += sa.sum(axis=1) - np.sum(t ** (-alpha))
            if "u1" in kinds or "u2" in kinds:
                s1 = (sa / s) if sa is not None else s ** (-1.0 - 0.5 * alpha)
                if "u1" in kinds:
                    acc["u1"] += (d * s1).sum(axis=1)
                if "u2" in kinds:
                    acc["u2"] += s1.sum(axis=1)
            if "u11" in kinds or "u12" in kinds or "u22" in kinds:
                if s1 is None:
                    s1 = s ** (-1.0 - 0.5 * alpha)
                s2 = s1 / s
                if "u11" in kinds:
                    acc["u11"] += (d * d * s2).sum(axis=1)
                if "u12" in kinds:
                    acc["u12"] += (d * s2).sum(axis=1)
                if "u22" in kinds:
                    acc["u22"] += s2.sum(axis=1)
    return acc
