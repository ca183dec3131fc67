"""Tests for the command-line interface, config handling, and artifacts."""

import json
import os

import numpy as np
import pytest

from alphasqg import cli, kernels, snapshot
from alphasqg.contour import Chain

GOLDEN = os.path.join(os.path.dirname(__file__), "golden", "diagnostics_header.csv")


def write_config(path, **overrides):
    cfg = {
        "schema_version": 1,
        "alpha": 0.5,
        "geometry": {"kind": "flat_layer", "height": 0.3},
        "M": 32,
        "dt": 2e-3,
        "t_end": 4e-3,
        "output_dir": str(path.parent / "out"),
    }
    cfg.update(overrides)
    path.write_text(json.dumps(cfg))
    return cfg


class TestSimulate:
    def test_flat_layer_exit_zero(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path)
        code = cli.main(["simulate", "--config", str(cfg_path)])
        assert code == 0
        out = tmp_path / "out"
        assert (out / "summary.json").exists()
        assert (out / "plot.svg").exists()
        assert (out / "diagnostics.csv").exists()
        summary = json.loads((out / "summary.json").read_text())
        assert summary["stop_reason"] == "t_end"
        # flat layer: final contours identical to initial
        _, first = snapshot.load_snapshot(str(out / "snapshot_000000.json"))
        snaps = sorted(out.glob("snapshot_*.json"))
        _, last = snapshot.load_snapshot(str(snaps[-1]))
        for a, b in zip(first.curves, last.curves):
            assert np.max(np.abs(a.nodes - b.nodes)) < 1e-12

    def test_csv_monotone_time_and_golden_header(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path)
        assert cli.main(["simulate", "--config", str(cfg_path)]) == 0
        lines = (tmp_path / "out" / "diagnostics.csv").read_text().strip().split("\n")
        golden = open(GOLDEN).read().strip()
        assert lines[0] == golden
        times = [float(row.split(",")[0]) for row in lines[1:]]
        assert times == sorted(times)
        assert len(set(times)) == len(times)

    def test_stop_condition_exit_two(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path, F_ceiling=1.0)
        code = cli.main(["simulate", "--config", str(cfg_path)])
        assert code == 2
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["stop_reason"] == "chord-arc ceiling"

    def test_invalid_config_exit_one(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path, alpha=2.0)
        assert cli.main(["simulate", "--config", str(cfg_path)]) == 1

    def test_missing_config_exit_one(self, tmp_path):
        assert cli.main(["simulate", "--config", str(tmp_path / "nope.json")]) == 1

    def test_from_file_geometry(self, tmp_path):
        src = tmp_path / "seed.json"
        from alphasqg import geometry

        snapshot.save_snapshot(str(src), 0.0, geometry.flat_layer(0.3, M=32))
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path, geometry={"kind": "from_file", "path": str(src)})
        assert cli.main(["simulate", "--config", str(cfg_path)]) == 0


class TestKernelCommand:
    def test_free_only_value(self, tmp_path, capsys):
        code = cli.main(["kernel", "1", "0", "--alpha", "0.5", "--free-only"])
        out = capsys.readouterr().out
        assert code == 0
        g_line = [l for l in out.splitlines() if l.startswith("G_alpha")][0]
        val = float(g_line.split("=")[1])
        assert abs(val - kernels.c_alpha(kernels.Alpha(0.5))) < 1e-16
        # 17 significant digits in the printed mantissa
        mantissa = g_line.split("=")[1].strip().split("e")[0].replace("-", "").replace(".", "")
        assert len(mantissa) == 17

    def test_r_only_origin(self, capsys):
        code = cli.main(["kernel", "0", "0", "--alpha", "0.5", "--r-only"])
        out = capsys.readouterr().out
        assert code == 0
        val = float(out.split("=")[1])
        assert abs(val) < 1e-12

    def test_full_output_fields(self, capsys):
        code = cli.main(["kernel", "0.25", "0.4", "--alpha", "0.7"])
        out = capsys.readouterr().out
        assert code == 0
        for name in ("G_alpha", "K_alpha_1", "K_alpha_2", "R_alpha", "G_alpha_p",
                     "H_alpha_1", "H_alpha_2"):
            assert any(l.startswith(name) for l in out.splitlines())

    def test_singular_point_exit_one(self, capsys):
        assert cli.main(["kernel", "1", "0", "--alpha", "0.5"]) == 1


class TestDiagnoseCommand:
    def test_unit_circle_f(self, tmp_path, capsys):
        from alphasqg import geometry

        snap = tmp_path / "circle.json"
        snapshot.save_snapshot(str(snap), 0.0, Chain([geometry.circle(1.0, M=128)]))
        code = cli.main(["diagnose", str(snap), "--alpha", "0.5"])
        out = capsys.readouterr().out
        assert code == 0
        assert any(l.startswith("F ") for l in out.splitlines())

    def test_two_circle_separation(self, tmp_path, capsys):
        from alphasqg import geometry

        snap = tmp_path / "two.json"
        chain = Chain(
            [geometry.circle(0.1, (0.0, 0.5), 32), geometry.circle(0.1, (0.0, -0.5), 32)]
        )
        snapshot.save_snapshot(str(snap), 0.0, chain)
        code = cli.main(["diagnose", str(snap)])
        out = capsys.readouterr().out
        sep_line = [l for l in out.splitlines() if l.startswith("separation")][0]
        assert abs(float(sep_line.split("=")[1]) - 0.8) < 1e-12

    def test_csv_append(self, tmp_path, capsys):
        from alphasqg import geometry

        snap = tmp_path / "c.json"
        snapshot.save_snapshot(str(snap), 0.0, Chain([geometry.circle(0.2, M=32)]))
        csv_path = tmp_path / "rows.csv"
        assert cli.main(["diagnose", str(snap), "--out", str(csv_path)]) == 0
        assert cli.main(["diagnose", str(snap), "--out", str(csv_path)]) == 0
        capsys.readouterr()
        lines = csv_path.read_text().strip().split("\n")
        assert len(lines) == 3  # one header, two rows

    def test_bad_snapshot_exit_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert cli.main(["diagnose", str(bad)]) == 1


class TestOracleCheck:
    def test_passes(self, capsys):
        code = cli.main(["oracle-check", "--alpha", "0.5"])
        out = capsys.readouterr().out
        assert code == 0
        assert "OK" in out

    def test_impossible_tolerance_fails(self, capsys):
        code = cli.main(["oracle-check", "--alpha", "0.5", "--tolerance", "1e-30"])
        assert code == 1


class TestConfigSchema:
    def test_unknown_key_rejected(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path, bogus_key=1)
        assert cli.main(["simulate", "--config", str(cfg_path)]) == 1

    def test_wrong_schema_version(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path, schema_version=99)
        assert cli.main(["simulate", "--config", str(cfg_path)]) == 1

    def test_threads_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CDE_THREADS", "2")
        cfg_path = tmp_path / "cfg.json"
        write_config(cfg_path)
        assert cli.main(["simulate", "--config", str(cfg_path)]) == 0
