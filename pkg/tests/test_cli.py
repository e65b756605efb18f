"""Command-line interface tests.

Most tests drive :func:`parse_and_dispatch` in-process and assert on
the exit code contract (0 success, 2 usage or validation, 1 runtime);
a couple of subprocess tests confirm the module entry point works from
a cold start.
"""

import csv
import io
import subprocess
import sys

import pytest

from suzukilab.cli import parse_and_dispatch
from suzukilab.decompose import sequence_from_text
from suzukilab.experiments import CSV_COLUMNS


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = parse_and_dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


SMALL = ("--qubits", "3", "--steps", "2")


class TestExitCodes:
    def test_help_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "--help")
        assert code == 0
        assert "extremal" in out

    def test_version_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "--version")
        assert code == 0
        assert "suzukilab" in out

    def test_missing_subcommand_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys)
        assert code == 2

    def test_unknown_flag_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "extremal", "--frobnicate")
        assert code == 2

    def test_bad_flag_type_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "extremal", "--qubits", "three")
        assert code == 2

    def test_validation_error_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "extremal", "--qubits", "1")
        assert code == 2
        assert "error" in err

    def test_runtime_failure_exits_one(self, capsys):
        # 20 qubits passes argument validation but the register cap
        # rejects the dense build at run time.
        code, _, err = run_cli(capsys, "extremal", "--qubits", "20", "--steps", "1")
        assert code == 1
        assert err.startswith("suzukilab:")
        assert err.count("\n") == 1


class TestExperimentCommands:
    def test_extremal_stdout_csv(self, capsys):
        code, out, _ = run_cli(capsys, "extremal", *SMALL)
        assert code == 0
        rows = parse_csv(out)
        assert list(rows[0].keys()) == list(CSV_COLUMNS)
        assert len(rows) == 3 * 2

    def test_out_flag_writes_file(self, capsys, tmp_path):
        path = tmp_path / "extremal.csv"
        code, out, _ = run_cli(capsys, "extremal", *SMALL, "--out", str(path))
        assert code == 0
        assert out == ""
        rows = parse_csv(path.read_text())
        assert len(rows) == 6

    def test_model_selection(self, capsys):
        code, out, _ = run_cli(capsys, "extremal", *SMALL, "--model", "xyz")
        assert code == 0
        assert all(r["model"] == "xyz" for r in parse_csv(out))

    def test_fractional_sweep_runs(self, capsys):
        code, out, _ = run_cli(capsys, "fractional-sweep", *SMALL)
        assert code == 0
        strategies = {r["strategy"] for r in parse_csv(out)}
        assert strategies == {"shallow", "fractional", "wide", "hybrid"}

    def test_ensemble_size_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "ensemble", *SMALL, "--ensemble-size", "2"
        )
        assert code == 0
        rows = parse_csv(out)
        instances = {r["instance"] for r in rows}
        assert instances == {"0", "1", "mean", "std"}

    def test_noise_grid_flags(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "noise-sweep",
            *SMALL,
            "--p-min",
            "1e-6",
            "--p-max",
            "1e-4",
            "--p-points",
            "3",
        )
        assert code == 0
        rows = parse_csv(out)
        levels = sorted({float(r["p"]) for r in rows})
        assert levels == pytest.approx([1e-6, 1e-5, 1e-4])

    def test_single_point_grid(self, capsys):
        code, out, _ = run_cli(
            capsys, "noise-sweep", *SMALL, "--p-min", "1e-5", "--p-max", "1e-2",
            "--p-points", "1",
        )
        assert code == 0
        assert {float(r["p"]) for r in parse_csv(out)} == {1e-5}

    def test_inverted_grid_is_usage_error(self, capsys):
        code, _, _ = run_cli(
            capsys, "noise-sweep", *SMALL, "--p-min", "1e-2", "--p-max", "1e-6"
        )
        assert code == 2

    def test_nonpositive_points_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "noise-sweep", *SMALL, "--p-points", "0")
        assert code == 2


class TestBuildSequence:
    def test_round_trips_through_parser(self, capsys):
        code, out, _ = run_cli(
            capsys, "build-sequence", "--qubits", "3", "--strategy", "wide"
        )
        assert code == 0
        seq = sequence_from_text(out)
        assert len(seq) == 2**5 - 1
        assert seq.strategy.kind == "wide"

    def test_requires_strategy(self, capsys):
        code, _, err = run_cli(capsys, "build-sequence", "--qubits", "3")
        assert code == 2
        assert "--strategy" in err

    def test_fractional_needs_valid_fraction(self, capsys):
        code, _, _ = run_cli(
            capsys,
            "build-sequence",
            "--qubits",
            "3",
            "--strategy",
            "fractional",
            "--fraction",
            "1.5",
        )
        assert code == 2

    def test_fractional_uses_fraction_flag(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "build-sequence",
            "--qubits",
            "3",
            "--strategy",
            "fractional",
            "--fraction",
            "1.0",
        )
        assert code == 0
        assert sequence_from_text(out).strategy.fraction == 1.0

    def test_dry_run_prints_predicted_length(self, capsys):
        code, out, _ = run_cli(
            capsys, "build-sequence", "--qubits", "3", "--strategy", "wide",
            "--dry-run",
        )
        assert code == 0
        assert out.strip() == str(2**5 - 1)

    def test_dry_run_matches_real_build(self, capsys):
        for strategy in ("shallow", "wide"):
            code, dry, _ = run_cli(
                capsys, "build-sequence", "--qubits", "4", "--strategy", strategy,
                "--dry-run",
            )
            assert code == 0
            code, full, _ = run_cli(
                capsys, "build-sequence", "--qubits", "4", "--strategy", strategy
            )
            assert code == 0
            assert int(dry.strip()) == len(sequence_from_text(full))


class TestInfo:
    def test_reports_model_and_backend(self, capsys):
        code, out, _ = run_cli(capsys, "info", "--qubits", "4")
        assert code == 0
        assert "backend:" in out
        assert "terms: 7" in out
        assert "shallow=13" in out and "wide=127" in out

    def test_out_flag(self, capsys, tmp_path):
        path = tmp_path / "info.txt"
        code, _, _ = run_cli(capsys, "info", "--qubits", "3", "--out", str(path))
        assert code == 0
        assert "terms: 5" in path.read_text()


class TestConfigFile:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("qubits=4\nsteps=3\n# comment\n\nmodel=xyz\n")
        code, out, _ = run_cli(capsys, "extremal", "--config", str(config))
        assert code == 0
        rows = parse_csv(out)
        assert rows[0]["L"] == "4"
        assert rows[0]["model"] == "xyz"
        assert max(int(r["step_index"]) for r in rows) == 3

    def test_flags_override_config(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("qubits=4\nsteps=3\n")
        code, out, _ = run_cli(
            capsys, "extremal", "--config", str(config), "--steps", "2"
        )
        assert code == 0
        rows = parse_csv(out)
        assert rows[0]["L"] == "4"
        assert max(int(r["step_index"]) for r in rows) == 2

    def test_hyphenated_keys_accepted(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("ensemble-size=1\nqubits=3\nsteps=2\n")
        code, out, _ = run_cli(capsys, "ensemble", "--config", str(config))
        assert code == 0
        assert {r["instance"] for r in parse_csv(out)} == {"0", "mean", "std"}

    def test_unknown_key_is_usage_error(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("flux_capacitor=1\n")
        code, _, err = run_cli(capsys, "extremal", "--config", str(config))
        assert code == 2
        assert "flux_capacitor" in err

    def test_malformed_line_is_usage_error(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("qubits 4\n")
        code, _, _ = run_cli(capsys, "extremal", "--config", str(config))
        assert code == 2

    def test_missing_file_is_usage_error(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "extremal", "--config", str(tmp_path / "absent.cfg")
        )
        assert code == 2

    def test_bad_value_is_usage_error(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("qubits=many\n")
        code, _, _ = run_cli(capsys, "extremal", "--config", str(config))
        assert code == 2


class TestEntryPoint:
    def test_module_invocation(self):
        result = subprocess.run(
            [sys.executable, "-m", "suzukilab.cli", "--version"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "suzukilab" in result.stdout

    def test_module_usage_error_code(self):
        result = subprocess.run(
            [sys.executable, "-m", "suzukilab.cli", "extremal", "--qubits", "1"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 2
        assert result.stderr.strip().startswith("suzukilab: error:")
