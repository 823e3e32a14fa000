"""Sweep runners, the CSV contract, config parsing, and the CLI."""

import os
import subprocess
import sys

import numpy as np
import pytest

from phiwalk.cli import cli_main
from phiwalk.errors import ConfigError, ValidationError
from phiwalk.experiments import (
    ExperimentConfig,
    load_config,
    parse_config_text,
    read_sweep_csv,
    run_delta_sweep,
    run_distribution,
    run_noise_sweep,
    run_relative_sweep,
    run_sweep,
    write_sweep_csv,
)
from phiwalk.walk import WalkConfig


def small_walk(**kwargs) -> WalkConfig:
    kwargs.setdefault("steps", 10)
    return WalkConfig(**kwargs)


class TestExperimentConfig:
    def test_defaults(self):
        cfg = ExperimentConfig(walk=small_walk())
        assert cfg.sweep_kind == "noise_sweep"
        assert cfg.mu_values == (0.0, 0.05, 0.1, 0.2)
        assert cfg.t_fixed == 10
        assert cfg.snapshot_times == (10,)

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(walk=small_walk(), sweep_kind="bogus")

    def test_rejects_mu_out_of_range(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(walk=small_walk(), mu_values=(0.0, 1.5))

    def test_rejects_lag_beyond_fixed_time(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(
                walk=small_walk(),
                sweep_kind="delta_sweep",
                delta_values=(0, 11),
            )

    def test_rejects_snapshot_beyond_steps(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(
                walk=small_walk(),
                sweep_kind="distribution",
                snapshot_times=(4, 30),
            )


class TestRunDeltaSweep:
    def test_rows_and_argmax(self):
        cfg = ExperimentConfig(
            walk=small_walk(),
            sweep_kind="delta_sweep",
            mu_values=(0.0, 0.1),
            delta_values=tuple(range(7)),
        )
        result = run_delta_sweep(cfg)
        assert result.kind == "delta_sweep"
        assert result.n_rows == 14
        assert result.metadata["argmax_delta[mu=0]"] == "2"
        assert result.metadata["argmax_delta[mu=0.1]"] == "2"
        # mu-major ordering with the delta grid repeating inside
        assert np.array_equal(result.columns["delta"], np.tile(np.arange(7), 2))
        assert np.array_equal(
            result.columns["mu"], np.repeat([0.0, 0.1], 7)
        )

    def test_zero_lag_rows_are_zero(self):
        cfg = ExperimentConfig(
            walk=small_walk(),
            sweep_kind="delta_sweep",
            mu_values=(0.0,),
            delta_values=(0, 1, 2),
        )
        result = run_delta_sweep(cfg)
        assert result.columns["phi"][0] == 0.0


class TestRunNoiseSweep:
    def test_grid_and_monotone_noise(self):
        cfg = ExperimentConfig(
            walk=small_walk(steps=16), mu_values=(0.0, 0.1, 0.3)
        )
        result = run_noise_sweep(cfg)
        times = np.arange(2, 17)
        assert np.array_equal(result.columns["t"], np.tile(times, 3))
        final_rows = result.columns["t"] == 16
        finals = result.columns["phi"][final_rows]
        assert np.all(np.diff(finals) < 0)

    def test_lag_column_respected(self):
        cfg = ExperimentConfig(
            walk=small_walk(steps=12, delta=4), mu_values=(0.0,)
        )
        result = run_noise_sweep(cfg)
        assert result.columns["t"][0] == 4


class TestRunRelativeSweep:
    def test_noiseless_rows_are_unity(self):
        cfg = ExperimentConfig(
            walk=small_walk(steps=12),
            sweep_kind="relative_sweep",
            mu_values=(0.0, 0.2),
        )
        result = run_relative_sweep(cfg)
        zero_rows = result.columns["mu"] == 0.0
        assert np.all(result.columns["phi_rel"][zero_rows] == 1.0)

    def test_phi_column_matches_noise_sweep(self):
        base = dict(walk=small_walk(steps=12), mu_values=(0.0, 0.2))
        rel = run_relative_sweep(
            ExperimentConfig(sweep_kind="relative_sweep", **base)
        )
        noise = run_noise_sweep(ExperimentConfig(sweep_kind="noise_sweep", **base))
        assert np.array_equal(rel.columns["phi"], noise.columns["phi"])

    def test_baseline_computed_when_mu_zero_absent(self):
        cfg = ExperimentConfig(
            walk=small_walk(steps=12),
            sweep_kind="relative_sweep",
            mu_values=(0.2,),
        )
        result = run_relative_sweep(cfg)
        assert result.n_rows > 0
        assert np.all(result.columns["mu"] == 0.2)


class TestRunDistribution:
    def test_rows_cover_lattice(self):
        cfg = ExperimentConfig(
            walk=small_walk(steps=6, mu=0.2),
            sweep_kind="distribution",
            snapshot_times=(3, 6),
        )
        result = run_distribution(cfg)
        size = cfg.walk.lattice_size
        assert result.n_rows == 2 * size
        for t in (3, 6):
            rows = result.columns["t"] == t
            assert result.columns["p"][rows].sum() == pytest.approx(1.0, abs=1e-10)
            assert np.array_equal(
                result.columns["x"][rows], np.arange(-6, 7)
            )


class TestCsvContract:
    def test_round_trip_is_exact(self, tmp_path):
        cfg = ExperimentConfig(walk=small_walk(), mu_values=(0.0, 0.3))
        result = run_noise_sweep(cfg)
        path = tmp_path / "sweep.csv"
        write_sweep_csv(result, path)
        metadata, columns = read_sweep_csv(path)
        for name, col in result.columns.items():
            assert np.array_equal(columns[name], np.asarray(col, dtype=np.float64))
        assert metadata["sweep.kind"] == "noise_sweep"
        assert metadata["walk.steps"] == "10"
        assert metadata["version"]

    def test_rewrite_is_byte_identical(self, tmp_path):
        cfg = ExperimentConfig(
            walk=small_walk(),
            sweep_kind="delta_sweep",
            mu_values=(0.0,),
            delta_values=(0, 1, 2, 3),
        )
        path_a = tmp_path / "a.csv"
        path_b = tmp_path / "b.csv"
        write_sweep_csv(run_sweep(cfg), path_a)
        write_sweep_csv(run_sweep(cfg), path_b)
        assert path_a.read_bytes() == path_b.read_bytes()

    def test_uses_lf_line_endings(self, tmp_path):
        cfg = ExperimentConfig(walk=small_walk(), mu_values=(0.0,))
        path = tmp_path / "sweep.csv"
        write_sweep_csv(run_noise_sweep(cfg), path)
        raw = path.read_bytes()
        assert b"\r" not in raw
        assert raw.endswith(b"\n")

    def test_argmax_metadata_key_survives_round_trip(self, tmp_path):
        cfg = ExperimentConfig(
            walk=small_walk(),
            sweep_kind="delta_sweep",
            mu_values=(0.0,),
            delta_values=tuple(range(5)),
        )
        path = tmp_path / "sweep.csv"
        write_sweep_csv(run_delta_sweep(cfg), path)
        metadata, _ = read_sweep_csv(path)
        assert metadata["argmax_delta[mu=0]"] == "2"

    def test_read_rejects_ragged_rows(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("# version=0\nt,mu,phi\n1,0.0\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            read_sweep_csv(path)


class TestConfigParsing:
    def test_full_config(self):
        text = "\n".join(
            [
                "# walk parameters",
                "walk.steps = 20",
                "walk.alpha = 0.5",
                "walk.mu = 0.1",
                "walk.delta = 3",
                "walk.seed = 42",
                "sweep.kind = delta_sweep",
                "sweep.mu_values = 0.0, 0.1",
                "sweep.delta_values = 0, 1, 2, 3",
                "sweep.t_fixed = 18",
                "output.path = out.csv",
                "output.emit_distributions = true",
            ]
        )
        cfg = parse_config_text(text)
        assert cfg.walk.steps == 20
        assert cfg.walk.alpha == 0.5
        assert cfg.walk.seed == 42
        assert cfg.sweep_kind == "delta_sweep"
        assert cfg.delta_values == (0, 1, 2, 3)
        assert cfg.t_fixed == 18
        assert cfg.output_path == "out.csv"
        assert cfg.emit_distributions is True

    def test_defaults_when_empty(self):
        cfg = parse_config_text("# nothing but comments\n")
        assert cfg.walk.steps == 100
        assert cfg.sweep_kind == "noise_sweep"

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown config key"):
            parse_config_text("walk.stepz = 5")

    def test_bad_value(self):
        with pytest.raises(ConfigError, match="bad value"):
            parse_config_text("walk.steps = many")

    def test_malformed_line(self):
        with pytest.raises(ConfigError, match="expected key=value"):
            parse_config_text("walk.steps")

    def test_custom_kraus_ops(self):
        text = "\n".join(
            [
                "walk.steps = 5",
                "channel.kraus.0 = 1,0; 0,0.8",
                "channel.kraus.1 = 0,0.6; 0,0",
            ]
        )
        cfg = parse_config_text(text)
        assert cfg.walk.channel_name == "custom"
        ops = cfg.walk.channel_ops
        assert len(ops) == 2
        assert ops[0][1][1] == pytest.approx(0.8)
        assert ops[1][0][1] == pytest.approx(0.6)

    def test_incomplete_custom_kraus_rejected(self):
        text = "walk.steps = 5\nchannel.kraus.0 = 1,0; 0,0.5\n"
        with pytest.raises(ConfigError):
            parse_config_text(text)

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.cfg")


class TestCli:
    def test_delta_sweep_writes_csv(self, tmp_path):
        out = tmp_path / "delta.csv"
        code = cli_main(
            [
                "delta-sweep",
                "--steps",
                "10",
                "--mu",
                "0,0.1",
                "--delta",
                "0,1,2,3",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        metadata, columns = read_sweep_csv(out)
        assert metadata["argmax_delta[mu=0]"] == "2"
        assert len(columns["phi"]) == 8

    def test_repeat_runs_are_byte_identical(self, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        args = ["noise-sweep", "--steps", "8", "--mu", "0,0.2", "--seed", "3"]
        assert cli_main(args + ["--out", str(out_a)]) == 0
        assert cli_main(args + ["--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_config_file_run(self, tmp_path):
        cfg_path = tmp_path / "run.cfg"
        cfg_path.write_text(
            "walk.steps = 8\nsweep.mu_values = 0.0, 0.1\n", encoding="utf-8"
        )
        out = tmp_path / "out.csv"
        code = cli_main(
            ["noise-sweep", "--config", str(cfg_path), "--out", str(out)]
        )
        assert code == 0
        metadata, _ = read_sweep_csv(out)
        assert metadata["walk.steps"] == "8"

    def test_emit_distributions_writes_companion_csv(self, tmp_path):
        cfg_path = tmp_path / "run.cfg"
        cfg_path.write_text(
            "walk.steps = 6\noutput.emit_distributions = true\n", encoding="utf-8"
        )
        out = tmp_path / "main.csv"
        code = cli_main(
            ["noise-sweep", "--config", str(cfg_path), "--out", str(out)]
        )
        assert code == 0
        companion = tmp_path / "main_distribution.csv"
        assert companion.exists()
        metadata, columns = read_sweep_csv(companion)
        assert metadata["sweep.kind"] == "distribution"
        assert "p" in columns

    def test_runtime_error_exits_one(self, capsys):
        code = cli_main(["noise-sweep", "--mu", "2.0", "--steps", "5"])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_invalid_usage_exits_two(self):
        with pytest.raises(SystemExit) as excinfo:
            cli_main(["not-a-command"])
        assert excinfo.value.code == 2

    def test_validate_subcommand_passes(self):
        # The full invariant suite is exercised through a real process to
        # match how users run it.
        proc = subprocess.run(
            [sys.executable, "-c", "from phiwalk.cli import main; main()", "validate"],
            capture_output=True,
            text=True,
            env=dict(os.environ),
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "FAIL" not in proc.stdout
        assert "checks passed" in proc.stdout

    def test_distribution_command(self, tmp_path):
        out = tmp_path / "dist.csv"
        code = cli_main(
            ["distribution", "--steps", "6", "--mu", "0.3", "--out", str(out)]
        )
        assert code == 0
        _, columns = read_sweep_csv(out)
        assert columns["p"].sum() == pytest.approx(1.0, abs=1e-10)
