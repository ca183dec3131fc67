"""Tests for the RK4 stepper, stop conditions, and snapshot persistence."""

import numpy as np
import pytest

from alphasqg import cde, evolution, geometry, kernels, snapshot
from alphasqg.contour import Chain, Curve


def rotation_stub(omega):
    """Velocity field v = omega x_perp, an exactly solvable linear system."""

    def vel(chain, kcfg, quad=None, f_ceiling=None):
        out = np.empty((len(chain.curves), chain.M, 2))
        for i, c in enumerate(chain.curves):
            out[i, :, 0] = -omega * c.nodes[:, 1]
            out[i, :, 1] = omega * c.nodes[:, 0]
        return out

    return vel


class TestRK4:
    def test_fourth_order_on_rotation(self, monkeypatch):
        monkeypatch.setattr(cde, "cde_velocity", rotation_stub(1.0))
        kcfg = kernels.KernelConfig(0.5)
        base = geometry.circle(0.3, (0.1, 0.0), 32)
        errs = []
        for dt in (0.2, 0.1):
            chain = Chain([base])
            n = int(round(1.0 / dt))
            for _ in range(n):
                chain = evolution.step(chain, dt, kcfg)
            rot = np.array(
                [[np.cos(1.0), -np.sin(1.0)], [np.sin(1.0), np.cos(1.0)]]
            )
            exact = base.nodes @ rot.T
            errs.append(np.max(np.abs(chain.curves[0].nodes - exact)))
        order = np.log2(errs[0] / errs[1])
        assert order > 3.8

    def test_flat_layer_fixed_point(self):
        kcfg = kernels.KernelConfig(0.5)
        chain = geometry.flat_layer(0.3, M=32)
        stepped = evolution.step(chain, 1e-3, kcfg)
        for i in range(2):
            assert np.max(np.abs(stepped.curves[i].nodes - chain.curves[i].nodes)) < 1e-14

    def test_alpha_one_refused(self):
        chain = geometry.flat_layer(0.3, M=32)
        with pytest.raises(ValueError):
            evolution.step(chain, 1e-3, kernels.KernelConfig(1.0))

    def test_invalid_dt(self):
        with pytest.raises(ValueError):
            evolution.StepperConfig(dt=0.0, t_end=1.0)


class TestRun:
    def test_reaches_t_end(self):
        kcfg = kernels.KernelConfig(0.5)
        chain = geometry.flat_layer(0.3, M=32)
        cfg = evolution.StepperConfig(dt=2e-3, t_end=6e-3)
        res = evolution.run(chain, kcfg, cfg)
        assert res.stop_reason == "t_end"
        assert abs(res.final_time - 6e-3) < 1e-15
        assert len(res.snapshots) == 4
        assert len(res.records) == 4
        times = [t for t, _ in res.snapshots]
        assert times == sorted(times)

    def test_immediate_ceiling(self):
        kcfg = kernels.KernelConfig(0.5)
        chain = geometry.flat_layer(0.3, M=32)
        cfg = evolution.StepperConfig(dt=1e-3, t_end=1e-2, F_ceiling=1.0)
        res = evolution.run(chain, kcfg, cfg)
        assert res.stop_reason == "chord-arc ceiling"
        assert res.final_time == 0.0

    def test_immediate_separation_floor(self):
        kcfg = kernels.KernelConfig(0.5)
        chain = Chain(
            [geometry.circle(0.1, (0.0, 0.5), 32), geometry.circle(0.1, (0.0, -0.5), 32)]
        )
        cfg = evolution.StepperConfig(dt=1e-3, t_end=1e-2, separation_floor=0.9)
        res = evolution.run(chain, kcfg, cfg)
        assert res.stop_reason == "separation floor"
        assert res.final_time == 0.0

    def test_static_two_circles_never_spurious(self):
        # separation 0.8 against floor 0.75: a short run must finish at
        # t_end, not trip the guard
        kcfg = kernels.KernelConfig(0.5)
        chain = Chain(
            [geometry.circle(0.1, (0.0, 0.5), 32), geometry.circle(0.1, (0.0, -0.5), 32)]
        )
        cfg = evolution.StepperConfig(dt=1e-3, t_end=3e-3, separation_floor=0.75)
        res = evolution.run(chain, kcfg, cfg)
        assert res.stop_reason == "t_end"
        assert all(rec.separation > 0.75 for rec in res.records)

    def test_snapshot_stride(self):
        kcfg = kernels.KernelConfig(0.5)
        chain = geometry.flat_layer(0.3, M=32)
        cfg = evolution.StepperConfig(dt=1e-3, t_end=6e-3, snapshot_stride=3)
        res = evolution.run(chain, kcfg, cfg)
        assert [t for t, _ in res.snapshots] == [0.0, 3e-3, 6e-3]

    def test_mollified_run(self):
        kcfg = kernels.KernelConfig(0.5)
        chain = geometry.flat_layer(0.3, amplitude=0.01, M=32)
        cfg = evolution.StepperConfig(
            dt=2e-3, t_end=4e-3, use_mollified=True, epsilon=0.3
        )
        res = evolution.run(chain, kcfg, cfg)
        assert res.stop_reason == "t_end"


class TestSnapshot:
    def test_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(9)
        chain = Chain(
            [
                Curve(rng.normal(size=(32, 2)) * 0.01 + geometry.circle(0.2, M=32).nodes),
                geometry.front(0.3, amplitude=0.01, M=32),
            ]
        )
        path = tmp_path / "snap.json"
        snapshot.save_snapshot(str(path), 0.125, chain)
        t, back = snapshot.load_snapshot(str(path))
        assert t == 0.125
        for a, b in zip(chain.curves, back.curves):
            assert a.winding == b.winding
            assert np.array_equal(a.nodes, b.nodes)

    def test_dict_defaults(self):
        doc = {"curves": [{"nodes": geometry.circle(0.2, M=16).nodes.tolist()}]}
        t, chain = snapshot.chain_from_dict(doc)
        assert t == 0.0
        assert chain.curves[0].winding == 0
