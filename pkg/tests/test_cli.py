"""Configuration parsing, report emission, exit codes, and determinism."""
import json
import subprocess
import sys

import pytest

from monofrac import __version__
from monofrac.cli import SuiteConfig, load_config, main, run
from monofrac.errors import ConfigError


def write_config(path, **overrides):
    base = {
        "suites": ["radial"],
        "grid_size": 9,
        "output_dir": str(path.parent / "out"),
        "seed": 99,
        "mc_samples": 20000,
        "figures": False,
    }
    base.update(overrides)
    path.write_text(json.dumps(base), encoding="utf-8")
    return path


class TestConfig:
    def test_round_trip(self, tmp_path):
        cfg = load_config(write_config(tmp_path / "c.json"))
        assert cfg.suites == ("radial",)
        assert cfg.seed == 99

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nope.json")

    def test_bad_json(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="JSON"):
            load_config(p)

    def test_empty_suites(self, tmp_path):
        with pytest.raises(ConfigError, match="nonempty"):
            load_config(write_config(tmp_path / "c.json", suites=[]))

    def test_unknown_suite(self, tmp_path):
        with pytest.raises(ConfigError, match="unknown suites"):
            load_config(write_config(tmp_path / "c.json", suites=["nope"]))

    def test_grid_too_small(self, tmp_path):
        with pytest.raises(ConfigError, match="grid_size"):
            load_config(write_config(tmp_path / "c.json", grid_size=4))

    def test_unknown_keys(self, tmp_path):
        with pytest.raises(ConfigError, match="unknown config keys"):
            load_config(write_config(tmp_path / "c.json", bogus=True))

    def test_unknown_tolerance_keys(self, tmp_path):
        with pytest.raises(ConfigError, match="tolerance"):
            load_config(write_config(tmp_path / "c.json", tolerances={"abs": 1e-9}))

    def test_tolerance_overrides_applied(self, tmp_path):
        cfg = load_config(
            write_config(tmp_path / "c.json", tolerances={"abs_tol": 1e-8, "tau_strict": 1e-7})
        )
        assert cfg.quad_config().abs_tol == 1e-8
        assert cfg.context().tau_strict == 1e-7


class TestRun:
    def test_report_files(self, tmp_path):
        out = tmp_path / "out"
        config = SuiteConfig(
            suites=("gromov",), grid_size=9, output_dir=str(out), figures=False
        )
        report = run(config)
        assert report.overall_pass
        summary = (out / "summary.csv").read_text(encoding="utf-8").splitlines()
        assert summary[0] == "suite,case_id,pass,max_violation"
        assert len(summary) == len(report.cases) + 1
        assert all(",true," in line for line in summary[1:])
        payload = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert payload["version"] == __version__
        assert payload["overall_pass"] is True
        assert {c["suite"] for c in payload["cases"]} == {"gromov"}
        assert all("wall_time_s" in c for c in payload["cases"])

    def test_gromov_curve_columns(self, tmp_path):
        out = tmp_path / "out"
        config = SuiteConfig(
            suites=("gromov",), grid_size=9, output_dir=str(out), figures=False
        )
        run(config)
        curve = next(p for p in out.glob("gromov_ident_over_one_n1*.csv"))
        header = curve.read_text(encoding="utf-8").splitlines()[0]
        assert header == "x,ratio_hyp,ratio_concl"

    def test_sir_curve_columns(self, tmp_path):
        out = tmp_path / "out"
        config = SuiteConfig(suites=("sir",), grid_size=9, output_dir=str(out), figures=False)
        report = run(config)
        assert report.overall_pass
        curve = next(p for p in out.glob("sir_r0_2_s0_0.99*.csv"))
        lines = curve.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t,S,I,R,invariant_drift"
        # 17-significant-digit cells must round-trip.
        cell = lines[1].split(",")[1]
        assert float(cell) == 0.99

    def test_figures_rendered(self, tmp_path):
        out = tmp_path / "out"
        config = SuiteConfig(
            suites=("radial",),
            grid_size=9,
            output_dir=str(out),
            mc_samples=20000,
            figures=True,
        )
        run(config)
        csvs = {p.stem for p in out.glob("*.csv")} - {"summary"}
        pngs = {p.stem for p in out.glob("*.png")}
        assert csvs and csvs == pngs


class TestMain:
    def test_pass_exit_code(self, tmp_path, capsys):
        cfg = write_config(tmp_path / "c.json")
        assert main(["verify", "--config", str(cfg)]) == 0
        assert "0 failed" in capsys.readouterr().out

    def test_case_failure_exit_code(self, tmp_path, capsys):
        # An absurd strictness margin turns every strict verdict into a tie,
        # so expected-strict cases fail deterministically.
        cfg = write_config(
            tmp_path / "c.json", suites=["gromov"], tolerances={"tau_strict": 1e6}
        )
        assert main(["verify", "--config", str(cfg)]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_config_error_exit_code(self, tmp_path, capsys):
        cfg = write_config(tmp_path / "c.json", suites=["nope"])
        assert main(["verify", "--config", str(cfg)]) == 2
        assert "configuration error" in capsys.readouterr().err

    def test_missing_config_flag(self, capsys):
        assert main(["verify"]) == 2

    def test_io_error_exit_code(self, tmp_path, capsys):
        out = tmp_path / "blocked"
        out.write_text("a file, not a directory", encoding="utf-8")
        cfg = write_config(tmp_path / "c.json", output_dir=str(out))
        assert main(["verify", "--config", str(cfg)]) == 3
        assert "i/o error" in capsys.readouterr().err

    def test_list_suites(self, capsys):
        assert main(["--list-suites"]) == 0
        out = capsys.readouterr().out
        for name in ("calculus_oracles", "gromov", "lhopital", "zero_sets",
                     "mean_corollaries", "sir", "radial"):
            assert name in out

    def test_version_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "monofrac.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert __version__ in proc.stdout

    def test_cli_overrides(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", suites=["radial", "gromov"])
        out2 = tmp_path / "other"
        code = main(
            ["verify", "--config", str(cfg), "--suite", "radial", "--out", str(out2),
             "--seed", "123", "--grid", "10"]
        )
        assert code == 0
        payload = json.loads((out2 / "report.json").read_text(encoding="utf-8"))
        assert payload["config"]["suites"] == ["radial"]
        assert payload["config"]["seed"] == 123
        assert payload["config"]["grid_size"] == 10


class TestDeterminism:
    def test_csv_bytes_identical(self, tmp_path):
        cfg_path = tmp_path / "c.json"
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        base = {
            "suites": ["radial", "zero_sets"],
            "grid_size": 9,
            "seed": 4242,
            "mc_samples": 20000,
            "figures": False,
        }
        cfg_path.write_text(json.dumps({**base, "output_dir": str(out_a)}), encoding="utf-8")
        assert main(["verify", "--config", str(cfg_path)]) == 0
        cfg_path.write_text(json.dumps({**base, "output_dir": str(out_b)}), encoding="utf-8")
        assert main(["verify", "--config", str(cfg_path)]) == 0
        csvs = sorted(p.name for p in out_a.glob("*.csv"))
        assert csvs == sorted(p.name for p in out_b.glob("*.csv"))
        for name in csvs:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes(), name

    def test_figure_bytes_identical(self, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        for out in (out_a, out_b):
            config = SuiteConfig(
                suites=("radial",),
                grid_size=9,
                output_dir=str(out),
                seed=4242,
                mc_samples=20000,
                figures=True,
            )
            run(config)
        for name in sorted(p.name for p in out_a.glob("*.png")):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes(), name
