import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ricci_pinch import catalog_entry


def run_cli(*args, **kwargs):
    env = os.environ.copy()
    env.setdefault("MPLBACKEND", "Agg")
    return subprocess.run(
        [sys.executable, "-m", "ricci_pinch.cli", *args],
        capture_output=True, text=True, env=env, **kwargs,
    )


class TestCatalogCommands:
    def test_list(self):
        proc = run_cli("catalog", "list")
        assert proc.returncode == 0
        assert "cartan-12" in proc.stdout
        assert "focal-6-9" in proc.stdout

    def test_list_json(self):
        proc = run_cli("catalog", "list", "--format", "json")
        doc = json.loads(proc.stdout)
        assert "proj-O-2" in doc["entries"]

    def test_run_ok(self):
        proc = run_cli("catalog", "run", "cartan-12")
        assert proc.returncode == 0
        assert "| ok | True |" in proc.stdout

    def test_run_unknown_label(self):
        proc = run_cli("catalog", "run", "wrong-label")
        assert proc.returncode == 1


class TestVerdictCommand:
    def test_entry(self):
        proc = run_cli("verdict", "--entry", "clifford-4-2", "--k", "2", "--dupin",
                       "--restarts", "30")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        star = doc["report"]["results"]["star"]
        assert star["holds"] and not star["strict"]
        assert doc["report"]["results"]["dupin"]["multiplicity"] == 2

    def test_operator_file(self, tmp_path):
        ops = catalog_entry("clifford-4-2").data
        path = tmp_path / "ops.json"
        path.write_text(json.dumps(ops.to_json_dict()))
        proc = run_cli("verdict", "--operators", str(path), "--k", "2")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["report"]["results"]["star"]["b"] == pytest.approx(2.0)

    def test_requires_target(self):
        proc = run_cli("verdict", "--k", "2")
        assert proc.returncode == 1

    def test_bad_level_is_input_error(self):
        proc = run_cli("verdict", "--entry", "cartan-12", "--k", "10")
        assert proc.returncode == 1


class TestLsMaxCommand:
    def test_deterministic(self):
        args = ("ls-max", "--entry", "clifford-4-2", "--p", "2", "--seed", "7",
                "--restarts", "25")
        a, b = run_cli(*args), run_cli(*args)
        assert a.returncode == 0
        assert a.stdout == b.stdout
        doc = json.loads(a.stdout)
        assert doc["report"]["results"]["ls-max"]["classification"] == "equality"


class TestTubeCommand:
    def test_checks(self):
        proc = run_cli(
            "tube-check", "--patch", "sphere-base", "--tau", "1.0471975511965976",
            "--param", "ell=2", "--checks", "unit-closure,vertical-shape",
        )
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["report"]["results"]["vertical-shape"]["max_residual"] < 1e-6

    def test_unknown_patch(self):
        proc = run_cli("tube-check", "--patch", "torus-of-revolution")
        assert proc.returncode == 1


class TestReportCommand:
    def test_report_with_figures(self, tmp_path):
        config = {"entry": "cartan-12", "checks": ["star", "ls-max"], "k": 3,
                  "seed": 0, "restarts": 25}
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps(config))
        figdir = tmp_path / "figs"
        out = tmp_path / "report.json"
        proc = run_cli("report", "--config", str(cfg), "--figures", str(figdir),
                       "--out", str(out))
        assert proc.returncode == 0
        doc = json.loads(out.read_text())
        assert doc["report"]["figures"] == ["ricci_spectrum.png", "ls_profile.png"]
        for name in doc["report"]["figures"]:
            png = figdir / name
            assert png.exists() and png.stat().st_size > 1000

    def test_expectation_mismatch_exit_code(self, tmp_path):
        config = {"entry": "cartan-12", "checks": ["max-k"], "expect": {"max_k": 5}}
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps(config))
        proc = run_cli("report", "--config", str(cfg))
        assert proc.returncode == 2

    def test_expectation_ok_exit_code(self, tmp_path):
        config = {"entry": "cartan-12", "checks": ["max-k"], "expect": {"max_k": 3}}
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps(config))
        proc = run_cli("report", "--config", str(cfg))
        assert proc.returncode == 0

    def test_invalid_config_exit_code(self, tmp_path):
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"entry": "cartan-12", "nonsense": True}))
        proc = run_cli("report", "--config", str(cfg))
        assert proc.returncode == 1
        assert "nonsense" in proc.stderr

    def test_missing_config_file(self, tmp_path):
        proc = run_cli("report", "--config", str(tmp_path / "none.json"))
        assert proc.returncode == 1

    def test_markdown_format(self, tmp_path):
        config = {"entry": "focal-6-9", "checks": ["homology"], "k": 3}
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps(config))
        proc = run_cli("report", "--config", str(cfg), "--format", "markdown")
        assert proc.returncode == 0
        assert "Z at 0, 9, 15, 24" in proc.stdout
