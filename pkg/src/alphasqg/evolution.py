"""Time integration of the contour dynamics equation.

Classical fixed-step RK4 on the node positions; windings never change
because the velocity is a periodic field.  Runs terminate normally at
t_end or at one of two monitored degeneracies: the chord-arc sup crossing
its ceiling (approach to self-intersection) or the component separation
dropping below its floor.
"""

import numpy as np

from . import cde, diagnostics
from .contour import Chain, Curve


class StepperConfig:
    """Time-stepping contract.

    F_ceiling = None means 1000x the initial chord-arc sup; epsilon is only
    used when use_mollified is set.
    """

    def __init__(
        self,
        dt,
        t_end,
        use_mollified=False,
        epsilon=None,
        F_ceiling=None,
        separation_floor=1e-3,
        snapshot_stride=1,
    ):
        if dt <= 0.0:
            raise ValueError("dt must be positive")
        if separation_floor < 0.0:
            raise ValueError("separation_floor must be nonnegative")
        self.dt = float(dt)
        self.t_end = float(t_end)
        self.use_mollified = bool(use_mollified)
        self.epsilon = epsilon
        self.F_ceiling = F_ceiling
        self.separation_floor = float(separation_floor)
        self.snapshot_stride = max(1, int(snapshot_stride))


class RunResult:
    """Trajectory of a completed (or stopped) run."""

    def __init__(self, snapshots, records, stop_reason, final_time):
        self.snapshots = snapshots  # list of (time, Chain)
        self.records = records  # list of DiagnosticsRecord
        self.stop_reason = stop_reason
        self.final_time = final_time


def _check_alpha(kcfg):
    if kcfg.alpha.value >= 1.0:
        raise ValueError(
            "time evolution requires alpha < 1; alpha = 1 is supported for "
            "kernel evaluation only"
        )


def _displaced(chain, velocity, scale):
    return Chain(
        [
            Curve(c.nodes + scale * velocity[i], c.winding)
            for i, c in enumerate(chain.curves)
        ]
    )


def step(chain, dt, kcfg, quad=None, moll=None):
    """One classical RK4 step of d gamma/dt = L(gamma)."""
    _check_alpha(kcfg)
    quad = quad or cde.QuadratureConfig()

    def vel(ch):
        if moll is not None:
            return cde.cde_velocity_mollified(ch, kcfg, quad, moll)
        return cde.cde_velocity(ch, kcfg, quad)

    k1 = vel(chain)
    k2 = vel(_displaced(chain, k1, 0.5 * dt))
    k3 = vel(_displaced(chain, k2, 0.5 * dt))
    k4 = vel(_displaced(chain, k3, dt))
    return _displaced(chain, k1 + 2.0 * k2 + 2.0 * k3 + k4, dt / 6.0)


def run(chain, kcfg, cfg, quad=None, m=3, C=1.0):
    """Advance to t_end or a stop condition, collecting snapshots and
    diagnostics every snapshot_stride steps."""
    _check_alpha(kcfg)
    quad = quad or cde.QuadratureConfig()
    moll = cde.MollifierConfig(cfg.epsilon) if cfg.use_mollified else None

    rec0 = diagnostics.compute_record(chain, 0.0, m, kcfg.alpha, C)
    f_ceiling = cfg.F_ceiling
    if f_ceiling is None:
        f_ceiling = 1e3 * rec0.F_inf
    snapshots = [(0.0, chain)]
    records = [rec0]

    if rec0.F_inf >= f_ceiling:
        return RunResult(snapshots, records, "chord-arc ceiling", 0.0)
    if rec0.separation < cfg.separation_floor:
        return RunResult(snapshots, records, "separation floor", 0.0)

    n_steps = int(round(cfg.t_end / cfg.dt))
    t = 0.0
    for i in range(n_steps):
        chain = step(chain, cfg.dt, kcfg, quad, moll)
        t = (i + 1) * cfg.dt
        if (i + 1) % cfg.snapshot_stride == 0 or i + 1 == n_steps:
            rec = diagnostics.compute_record(chain, t, m, kcfg.alpha, C)
            snapshots.append((t, chain))
            records.append(rec)
            if not np.isfinite(rec.F_inf) or rec.F_inf >= f_ceiling:
                return RunResult(snapshots, records, "chord-arc ceiling", t)
            if rec.separation < cfg.separation_floor:
                return RunResult(snapshots, records, "separation floor", t)
    return RunResult(snapshots, records, "t_end", t)
