"""Command-line surface: simulate / kernel / diagnose / oracle-check.

Configs are single JSON documents validated against a versioned schema.
Exit codes: 0 on normal completion, 2 when a simulation terminates on a
stop condition (reason recorded in summary.json), 1 on any error.
"""

import argparse
import json
import os
import sys

import jsonschema
import numpy as np

from . import cde, diagnostics, evolution, geometry, kernels, oracle, snapshot
from .contour import Chain
from .errors import AlphaSQGError

CONFIG_SCHEMA_VERSION = 1

_GEOMETRY_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {
            "enum": ["flat_layer", "ellipse", "circle", "front", "two_component", "from_file"]
        },
        "height": {"type": "number"},
        "amplitude": {"type": "number"},
        "mode": {"type": "integer"},
        "phase": {"type": "number"},
        "random_phase": {"type": "boolean"},
        "a": {"type": "number"},
        "b": {"type": "number"},
        "rho": {"type": "number"},
        "center": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "specs": {"type": "array", "items": {"type": "object"}},
        "path": {"type": "string"},
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "alpha", "geometry", "M", "dt", "t_end"],
    "properties": {
        "schema_version": {"const": CONFIG_SCHEMA_VERSION},
        "alpha": {"type": "number", "exclusiveMinimum": 0.0, "maximum": 1.0},
        "geometry": _GEOMETRY_SCHEMA,
        "M": {"type": "integer", "minimum": 16},
        "dt": {"type": "number", "exclusiveMinimum": 0.0},
        "t_end": {"type": "number", "minimum": 0.0},
        "mollified": {"type": "boolean"},
        "epsilon": {"type": ["number", "null"]},
        "tail_tolerance": {"type": "number", "exclusiveMinimum": 0.0},
        "max_images": {"type": "integer", "minimum": 1},
        "F_ceiling": {"type": ["number", "null"]},
        "separation_floor": {"type": "number", "minimum": 0.0},
        "snapshot_stride": {"type": "integer", "minimum": 1},
        "sobolev_m": {"type": "integer", "minimum": 3},
        "output_dir": {"type": "string"},
        "seed": {"type": "integer"},
    },
    "additionalProperties": False,
}


def _resolve_threads(flag_value):
    """--threads wins over CDE_THREADS; results are deterministic either way
    (the numerics are single-threaded reductions), so this only caps BLAS."""
    if flag_value is not None:
        n = flag_value
    else:
        n = int(os.environ.get("CDE_THREADS", "0") or "0")
    if n > 0:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(n))
    return n


def build_chain(geo, M, seed=0):
    """Instantiate the configured geometry as a Chain."""
    kind = geo["kind"]
    if kind == "from_file":
        _, chain = snapshot.load_snapshot(geo["path"])
        return chain
    phase = geo.get("phase", 0.0)
    if geo.get("random_phase"):
        phase = float(np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi))
    if kind == "flat_layer":
        return geometry.flat_layer(
            geo["height"], geo.get("amplitude", 0.0), geo.get("mode", 1), M, phase
        )
    if kind == "front":
        return Chain(
            [geometry.front(geo["height"], geo.get("amplitude", 0.0), geo.get("mode", 1), M, phase)]
        )
    if kind == "circle":
        return Chain([geometry.circle(geo["rho"], tuple(geo.get("center", (0.0, 0.0))), M)])
    if kind == "ellipse":
        return Chain(
            [geometry.ellipse(geo["a"], geo["b"], tuple(geo.get("center", (0.0, 0.0))), M)]
        )
    if kind == "two_component":
        return geometry.two_component(geo["specs"], M)
    raise ValueError(f"unknown geometry kind {kind!r}")


def load_config(path):
    with open(path) as fh:
        cfg = json.load(fh)
    jsonschema.validate(cfg, CONFIG_SCHEMA)
    return cfg


def _plot_svg(path, initial, final):
    """Initial (dashed) and final (solid) contours with the fundamental
    strip boundaries at x1 = +-1/2 and one periodic image of each curve."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for chain, style, label in ((initial, "--", "initial"), (final, "-", "final")):
        for i, c in enumerate(chain.curves):
            closed = np.vstack([c.nodes, c.nodes[:1] + np.array([c.winding, 0.0])])
            lbl = label if i == 0 else None
            (line,) = ax.plot(closed[:, 0], closed[:, 1], style, label=lbl)
            ax.plot(
                closed[:, 0] + 1.0, closed[:, 1], style, color=line.get_color(), alpha=0.35
            )
    for xb in (-0.5, 0.5):
        ax.axvline(xb, color="gray", lw=0.8, ls=":")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.legend(loc="best")
    ax.set_aspect("equal", adjustable="datalim")
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_simulate(args):
    cfg = load_config(args.config)
    out_dir = args.out or cfg.get("output_dir", "out")
    os.makedirs(out_dir, exist_ok=True)
    chain = build_chain(cfg["geometry"], cfg["M"], cfg.get("seed", 0))
    kcfg = kernels.KernelConfig(
        cfg["alpha"],
        tail_tolerance=args.tolerance or cfg.get("tail_tolerance", 1e-10),
        max_images=cfg.get("max_images", 10**6),
    )
    scfg = evolution.StepperConfig(
        dt=cfg["dt"],
        t_end=cfg["t_end"],
        use_mollified=cfg.get("mollified", False),
        epsilon=cfg.get("epsilon"),
        F_ceiling=cfg.get("F_ceiling"),
        separation_floor=cfg.get("separation_floor", 1e-3),
        snapshot_stride=cfg.get("snapshot_stride", 1),
    )
    m = cfg.get("sobolev_m", 3)
    result = evolution.run(chain, kcfg, scfg, m=m)

    for idx, (t, ch) in enumerate(result.snapshots):
        snapshot.save_snapshot(os.path.join(out_dir, f"snapshot_{idx:06d}.json"), t, ch)
    csv_path = os.path.join(out_dir, "diagnostics.csv")
    diagnostics.write_csv_header(csv_path, result.records[0])
    for rec in result.records:
        diagnostics.append_csv_row(csv_path, rec)
    _plot_svg(
        os.path.join(out_dir, "plot.svg"), result.snapshots[0][1], result.snapshots[-1][1]
    )
    summary = {
        "stop_reason": result.stop_reason,
        "final_time": result.final_time,
        "n_snapshots": len(result.snapshots),
    }
    with open(os.path.join(out_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2)
    print(f"run finished: {result.stop_reason} at t = {result.final_time!r}")
    return 0 if result.stop_reason == "t_end" else 2


def _fmt(v):
    return f"{v:.16e}"


def cmd_kernel(args):
    kcfg = kernels.KernelConfig(args.alpha, tail_tolerance=args.tolerance or 1e-10)
    x = np.array([args.x1, args.x2])
    if args.r_only:
        print(f"R_alpha     = {_fmt(float(kernels.r_alpha(x, kcfg)))}")
        return 0
    g = float(kernels.green_free(x, kcfg))
    k = kernels.k_free(x, kcfg)
    print(f"G_alpha     = {_fmt(g)}")
    print(f"K_alpha_1   = {_fmt(k[0])}")
    print(f"K_alpha_2   = {_fmt(k[1])}")
    if args.free_only:
        return 0
    r = float(kernels.r_alpha(x, kcfg))
    h = kernels.h_alpha(x, kcfg)
    print(f"R_alpha     = {_fmt(r)}")
    print(f"G_alpha_p   = {_fmt(g + r)}")
    print(f"H_alpha_1   = {_fmt(h[0])}")
    print(f"H_alpha_2   = {_fmt(h[1])}")
    return 0


def cmd_diagnose(args):
    t, chain = snapshot.load_snapshot(args.snapshot)
    rec = diagnostics.compute_record(chain, t, args.m, args.alpha)
    t_star = diagnostics.blowup_bound_T(rec.energy_S, args.m, 1.0)
    eps0 = diagnostics.epsilon0(chain, F0_inf=rec.F_inf)
    print(f"F           = {_fmt(rec.F_inf)}")
    for j, s in enumerate(rec.S_n_inf):
        print(f"S_{j}         = {_fmt(s)}")
    print(f"H^{args.m} norm    = {_fmt(rec.sobolev_m)}")
    print(f"S           = {_fmt(rec.energy_S)}")
    for j, a in enumerate(rec.area):
        print(f"area_{j}      = {_fmt(a)}")
    print(f"separation  = {_fmt(rec.separation)}")
    print(f"T* (C = 1)  = {_fmt(t_star)}")
    print(f"eps0 (C = 1) = {_fmt(eps0)}")
    if args.out:
        if not os.path.exists(args.out):
            diagnostics.write_csv_header(args.out, rec)
        diagnostics.append_csv_row(args.out, rec)
    return 0


def cmd_oracle_check(args):
    tol = args.tolerance or 1e-6
    pts = [(x1, x2) for x1 in (-0.35, 0.0, 0.35) for x2 in (-0.6, 0.2, 0.7)]
    kcfg = kernels.KernelConfig(args.alpha)
    worst = 0.0
    for p in pts:
        ref = oracle.r_alpha_path_integral(p, args.alpha)
        fast = float(kernels.r_alpha(np.array(p), kcfg))
        worst = max(worst, abs(ref - fast))
    print(f"max |r_alpha - path integral| = {_fmt(worst)} over {len(pts)} points")
    if worst > tol:
        print(f"FAIL: exceeds tolerance {tol:g}", file=sys.stderr)
        return 1
    print(f"OK: within tolerance {tol:g}")
    return 0


def make_parser():
    parser = argparse.ArgumentParser(
        prog="alphasqg", description="Contour dynamics on the periodic strip"
    )
    parser.add_argument("--threads", type=int, default=None, help="BLAS thread cap (or env CDE_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a configured simulation")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--out", default=None, help="output directory (overrides config)")
    p_sim.add_argument("--tolerance", type=float, default=None, help="kernel tail tolerance")
    p_sim.set_defaults(func=cmd_simulate)

    p_ker = sub.add_parser("kernel", help="evaluate the kernels at a point")
    p_ker.add_argument("x1", type=float)
    p_ker.add_argument("x2", type=float)
    p_ker.add_argument("--alpha", type=float, required=True)
    p_ker.add_argument("--tolerance", type=float, default=None)
    p_ker.add_argument("--r-only", action="store_true", help="print only the lattice correction")
    p_ker.add_argument("--free-only", action="store_true", help="print only the free-space kernels")
    p_ker.set_defaults(func=cmd_kernel)

    p_diag = sub.add_parser("diagnose", help="diagnostics of a snapshot")
    p_diag.add_argument("snapshot")
    p_diag.add_argument("--m", type=int, default=3)
    p_diag.add_argument("--alpha", type=float, default=0.5)
    p_diag.add_argument("--out", default=None, help="append a CSV row here")
    p_diag.set_defaults(func=cmd_diagnose)

    p_oc = sub.add_parser("oracle-check", help="cross-check fast kernels against the oracle")
    p_oc.add_argument("--alpha", type=float, default=0.5)
    p_oc.add_argument("--tolerance", type=float, default=None)
    p_oc.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    _resolve_threads(args.threads)
    try:
        return args.func(args)
    except (AlphaSQGError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except jsonschema.ValidationError as exc:
        print(f"config error: {exc.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
