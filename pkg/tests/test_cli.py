"""Command-line surface: golden runs, exit codes, CSV schema, advice inversion."""

import csv
import json
import math
import subprocess
import sys

import pytest

from latgauss import DomainError, improved_sandwich_log
from latgauss.cli import SWEEP_HEADER, SweepSpec, advise

LN2 = math.log(2.0)


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "latgauss", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture()
def z1_file(tmp_path):
    path = tmp_path / "z1.json"
    path.write_text('{"vectors": [[1]]}')
    return str(path)


@pytest.fixture()
def z2_file(tmp_path):
    path = tmp_path / "z2.txt"
    path.write_text("1 0\n0 1\n")
    return str(path)


class TestAdvise:
    def test_closed_form_inversion(self):
        result = advise(500, -80.0, 1.04)
        assert result.c_min == pytest.approx(1.1066072864848768, rel=1e-14)
        assert result.gain_log2 == pytest.approx(72.07166419410678, rel=1e-12)
        assert result.regime_ok

    def test_plugging_back_satisfies_target(self):
        result = advise(500, -80.0, 1.04)
        target_ln = -80.0 * LN2
        assert improved_sandwich_log(result.c_min, 1.04, 500) <= target_ln + 1e-12
        assert improved_sandwich_log(result.c_min - 1e-6, 1.04, 500) > target_ln

    def test_achieved_bound_meets_target(self):
        result = advise(500, -80.0, 1.04)
        assert result.achieved_log2_bound <= -80.0 + 1e-12

    def test_boundary_target_above_zero(self):
        # at c = 1 the bound is 2^1, so a 2^0.9 target needs c slightly above 1
        result = advise(500, 0.9, 1.04)
        assert result.c_min > 1.0
        assert result.c_min == pytest.approx(1.0, abs=1e-3)
        assert result.achieved_log2_bound <= 0.9 + 1e-12

    def test_target_met_at_c_one(self):
        result = advise(500, 2.0, 1.04)
        assert result.c_min == 1.0
        assert result.achieved_log2_bound == pytest.approx(1.0, abs=1e-15)

    def test_out_of_regime_flagged_but_computed(self):
        result = advise(100, -40.0, 1.04)
        assert not result.regime_ok
        assert result.c_min > 1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            advise(0, -80.0, 1.04)
        with pytest.raises(DomainError):
            advise(500, -80.0, 0.0)


class TestMassCommand:
    def test_golden_z1(self, z1_file):
        proc = run_cli("mass", "--basis", z1_file, "--s", "1")
        assert proc.returncode == 0
        out = json.loads(proc.stdout)
        assert list(out) == ["value", "tail_bound", "radius", "points_used"]
        assert out["value"] == pytest.approx(1.08643481, abs=1e-7)

    def test_dimension_mismatch_exit_2(self, z1_file):
        proc = run_cli("mass", "--basis", z1_file, "--t", "0,0", "--s", "1")
        assert proc.returncode == 2
        assert "dimension" in proc.stderr

    def test_zero_s_exit_2(self, z1_file):
        proc = run_cli("mass", "--basis", z1_file, "--s", "0")
        assert proc.returncode == 2
        assert "s must be positive" in proc.stderr

    def test_budget_exit_3(self, z2_file):
        proc = run_cli("--budget", "10", "mass", "--basis", z2_file, "--s", "4", "--tol", "1e-12")
        assert proc.returncode == 3

    def test_missing_basis_exit_2(self):
        proc = run_cli("mass", "--basis", "/nonexistent.json", "--s", "1")
        assert proc.returncode == 2

    def test_precision_flag(self, z1_file):
        proc = run_cli("--precision", "3", "mass", "--basis", z1_file, "--s", "1")
        out = json.loads(proc.stdout)
        assert out["value"] == pytest.approx(1.09, abs=5e-3)


class TestPoissonCommand:
    def test_golden(self, z1_file):
        proc = run_cli("poisson", "--basis", z1_file, "--t", "0.5", "--s", "1")
        assert proc.returncode == 0
        out = json.loads(proc.stdout)
        assert list(out) == ["lhs", "rhs", "agreement"]
        assert out["lhs"]["value"] == pytest.approx(0.913579138, abs=1e-7)
        assert out["rhs"]["real_part"] == pytest.approx(0.913579138, abs=1e-7)
        assert out["agreement"] <= 1e-9


class TestBoundsSweep:
    def test_header_and_row_count(self, tmp_path):
        out = tmp_path / "sweep.csv"
        proc = run_cli(
            "bounds-sweep", "--n", "500", "--c-start", "1", "--c-stop", "3",
            "--c-step", "0.5", "--k", "1.04", "--out", str(out),
        )
        assert proc.returncode == 0
        text = out.read_text()
        assert "\r" not in text
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(SWEEP_HEADER)
        assert len(lines) == 1 + 5
        first = lines[1].split(",")
        assert float(first[1]) == 1.0
        assert float(first[3]) == 0.0  # log2_classic at c = 1
        assert first[-1] == "NA"

    def test_frozen_row_values(self, tmp_path):
        out = tmp_path / "sweep.csv"
        run_cli(
            "bounds-sweep", "--n", "500", "--c-start", "1", "--c-stop", "2",
            "--c-step", "0.5", "--k", "1.04", "--out", str(out),
        )
        with open(out) as fh:
            rows = {float(r["c"]): r for r in csv.DictReader(fh)}
        row = rows[2.0]
        assert float(row["log2_classic"]) == pytest.approx(-582.0212806667226, rel=1e-12)
        assert float(row["log2_improved_sandwich"]) == pytest.approx(-1081.0212806667226, rel=1e-12)
        assert float(row["log2_ratio_gain"]) == pytest.approx(499.0, rel=1e-12)

    def test_round_trip_reevaluation(self, tmp_path):
        from latgauss import (
            classic_bound_log,
            epsilon_log,
            improved_bound_log,
            improvement_ratio_log,
        )

        out = tmp_path / "sweep.csv"
        run_cli(
            "bounds-sweep", "--n", "100,500", "--c-start", "1", "--c-stop", "2.5",
            "--c-step", "0.25", "--k", "1.2", "--out", str(out),
        )
        with open(out) as fh:
            for row in csv.DictReader(fh):
                n, c, k = int(row["n"]), float(row["c"]), float(row["k"])
                assert float(row["log2_classic"]) == pytest.approx(
                    classic_bound_log(c, n) / LN2, rel=1e-9, abs=1e-9
                )
                assert float(row["log2_epsilon"]) == pytest.approx(
                    epsilon_log(k, n) / LN2, rel=1e-9
                )
                assert float(row["log2_improved"]) == pytest.approx(
                    improved_bound_log(c, k, n) / LN2, rel=1e-9
                )
                assert float(row["log2_ratio_gain"]) == pytest.approx(
                    improvement_ratio_log(c, n) / LN2, rel=1e-9, abs=1e-9
                )

    def test_true_ratio_bounded_by_classic(self, tmp_path, z2_file):
        out = tmp_path / "sweep.csv"
        proc = run_cli(
            "bounds-sweep", "--n", "2", "--c-start", "1", "--c-stop", "2",
            "--c-step", "0.5", "--k", "1.2", "--include-true-ratio",
            "--basis", z2_file, "--out", str(out),
        )
        assert proc.returncode == 0
        with open(out) as fh:
            for row in csv.DictReader(fh):
                assert row["log2_true_ratio"] != "NA"
                assert float(row["log2_true_ratio"]) <= float(row["log2_classic"]) + 1e-9

    def test_true_ratio_requires_basis(self, tmp_path):
        proc = run_cli(
            "bounds-sweep", "--n", "2", "--include-true-ratio",
            "--out", str(tmp_path / "x.csv"),
        )
        assert proc.returncode == 2

    def test_bad_c_range_exit_2(self, tmp_path):
        proc = run_cli(
            "bounds-sweep", "--n", "10", "--c-start", "0.5",
            "--out", str(tmp_path / "x.csv"),
        )
        assert proc.returncode == 2

    def test_spec_invariants(self):
        spec = SweepSpec(n_values=(500,), c_start=1.0, c_stop=3.0, c_step=0.5, k=1.04)
        assert spec.c_values == pytest.approx([1.0, 1.5, 2.0, 2.5, 3.0])
        with pytest.raises(DomainError):
            SweepSpec(n_values=(), c_start=1.0, c_stop=3.0, c_step=0.5, k=1.04)
        with pytest.raises(DomainError):
            SweepSpec(n_values=(10,), c_start=0.9, c_stop=3.0, c_step=0.5, k=1.04)
        with pytest.raises(DomainError):
            SweepSpec(n_values=(10,), c_start=1.0, c_stop=3.0, c_step=0.0, k=1.04)
        with pytest.raises(DomainError):
            SweepSpec(
                n_values=(2,), c_start=1.0, c_stop=2.0, c_step=0.5, k=1.2,
                include_true_ratio=True,
            )


class TestVerifyCommand:
    def small_config(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({
            "dims": [1, 2], "seeds": [0], "s_grid": [1.0],
            "c_grid": [1.0, 2.0], "k_grid": [1.5],
        }))
        return str(path)

    def test_exit_0_and_report(self, tmp_path):
        report = tmp_path / "report.jsonl"
        proc = run_cli("verify", "--config", self.small_config(tmp_path), "--out", str(report))
        assert proc.returncode == 0
        lines = report.read_text().strip().split("\n")
        summary = json.loads(lines[-1])["summary"]
        assert summary["failures"] == 0
        assert summary["total"] == len(lines) - 1
        assert json.loads(proc.stdout) == summary

    def test_negative_control_exit_1(self, tmp_path):
        report = tmp_path / "report.jsonl"
        proc = run_cli(
            "verify", "--config", self.small_config(tmp_path),
            "--out", str(report), "--negative-control",
        )
        assert proc.returncode == 1
        summary = json.loads(report.read_text().strip().split("\n")[-1])["summary"]
        assert summary["failures"] > 0

    def test_missing_config_exit_2(self, tmp_path):
        proc = run_cli("verify", "--config", str(tmp_path / "nope.json"))
        assert proc.returncode == 2

    def test_invalid_config_exit_2(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dims": [9]}')
        proc = run_cli("verify", "--config", str(path))
        assert proc.returncode == 2


class TestAdviseCommand:
    def test_golden(self):
        proc = run_cli("advise", "--n", "500", "--target", "-80", "--k", "1.04")
        assert proc.returncode == 0
        out = json.loads(proc.stdout)
        assert list(out) == ["c_min", "achieved_log2_bound", "gain_log2", "regime_ok"]
        assert out["c_min"] == pytest.approx(1.10661, abs=1e-5)
        assert out["gain_log2"] == pytest.approx(72.0717, abs=1e-3)
        assert out["regime_ok"] is True

    def test_out_of_regime(self):
        proc = run_cli("advise", "--n", "100", "--target", "-40", "--k", "1.04")
        out = json.loads(proc.stdout)
        assert out["regime_ok"] is False

    def test_bad_n_exit_2(self):
        proc = run_cli("advise", "--n", "0", "--target", "-40")
        assert proc.returncode == 2
