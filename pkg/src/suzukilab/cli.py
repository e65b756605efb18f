"""Command-line front end.

Subcommands mirror the experiment runners plus two utilities::

    suzukilab extremal         shallow/wide/hybrid trajectories -> CSV
    suzukilab fractional-sweep adds fractional strategies -> CSV
    suzukilab ensemble         random-instance ensemble -> CSV
    suzukilab noise-sweep      depolarizing-noise sweep -> CSV
    suzukilab build-sequence   print one sequence (or its length)
    suzukilab info             model and backend summary

Parameter precedence is flags > config file > defaults, where the
defaults are the standard study parameters (L=5, dt=0.01, 500 steps,
TFIM J=1 h=5, XYZ 3/2/1).  The config file is flat ``key=value`` text
with the same keys as the long flags.

Exit codes: 0 success, 2 argument or config errors, 1 runtime failures
(one-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from suzukilab import backend, __version__
from suzukilab.decompose import Strategy, predicted_length, sequence_to_text
from suzukilab.experiments import (
    DEFAULT_SEED,
    ExperimentConfig,
    ModelSpec,
    build_sequence,
    records_to_csv,
    run_extremal_comparison,
    run_fractional_sweep,
    run_noise_sweep,
    run_random_ensemble,
    write_csv,
)

_DEFAULTS: dict[str, object] = {
    "model": "tfim",
    "qubits": 5,
    "dt": 0.01,
    "steps": 500,
    "J": 1.0,
    "h": 5.0,
    "Jx": 3.0,
    "Jy": 2.0,
    "Jz": 1.0,
    "seed": DEFAULT_SEED,
    "ensemble_size": 100,
    "p_min": 1e-11,
    "p_max": 1e-2,
    "p_points": 10,
    "fraction": 0.1,
    "strategy": None,
    "out": None,
    "dry_run": False,
}

_CONVERTERS = {
    "model": str,
    "qubits": int,
    "dt": float,
    "steps": int,
    "J": float,
    "h": float,
    "Jx": float,
    "Jy": float,
    "Jz": float,
    "seed": int,
    "ensemble_size": int,
    "p_min": float,
    "p_max": float,
    "p_points": int,
    "fraction": float,
    "strategy": str,
    "out": str,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=("tfim", "xyz", "random"), help="Hamiltonian family")
    common.add_argument("--qubits", type=int, help="chain length L")
    common.add_argument("--dt", type=float, help="timestep")
    common.add_argument("--steps", type=int, help="number of timesteps r")
    common.add_argument("--J", type=float, help="TFIM coupling")
    common.add_argument("--h", type=float, help="TFIM transverse field")
    common.add_argument("--Jx", type=float, help="XYZ x coupling")
    common.add_argument("--Jy", type=float, help="XYZ y coupling")
    common.add_argument("--Jz", type=float, help="XYZ z coupling")
    common.add_argument("--seed", type=int, help="base RNG seed for random models")
    common.add_argument("--config", help="key=value config file; flags override it")
    common.add_argument("--out", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="suzukilab",
        description="Second-order Suzuki product formulas: build, simulate, sweep.",
    )
    parser.add_argument("--version", action="version", version=f"suzukilab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser(
        "extremal",
        parents=[common],
        help="shallow vs wide vs hybrid trajectories (CSV)",
    )
    sub.add_parser(
        "fractional-sweep",
        parents=[common],
        help="fractional strategies f=0.1..0.9 plus extremes (CSV)",
    )
    ensemble = sub.add_parser(
        "ensemble",
        parents=[common],
        help="final metrics over seeded random instances (CSV)",
    )
    ensemble.add_argument("--ensemble-size", type=int, help="number of random instances")
    noise = sub.add_parser(
        "noise-sweep",
        parents=[common],
        help="depolarizing-noise sweep for shallow/wide/fractional (CSV)",
    )
    noise.add_argument("--p-min", type=float, help="smallest noise probability")
    noise.add_argument("--p-max", type=float, help="largest noise probability")
    noise.add_argument("--p-points", type=int, help="number of log-spaced grid points")
    noise.add_argument("--fraction", type=float, help="budget of the fractional strategy")
    build = sub.add_parser(
        "build-sequence",
        parents=[common],
        help="print one decomposition in the sequence text format",
    )
    build.add_argument(
        "--strategy",
        choices=("shallow", "wide", "hybrid", "fractional"),
        help="decomposition strategy",
    )
    build.add_argument("--fraction", type=float, help="wide budget for --strategy fractional")
    build.add_argument(
        "--dry-run",
        action="store_true",
        default=None,
        help="print the predicted sequence length instead of building",
    )
    sub.add_parser(
        "info",
        parents=[common],
        help="summarise the chosen model, sequence lengths, and backend",
    )
    return parser


def _load_config(path: str) -> dict[str, object]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _CONVERTERS:
            raise _UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = _CONVERTERS[key](value.strip())
        except ValueError as exc:
            raise _UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


class _UsageError(Exception):
    """Argument or config error; maps to exit code 2."""


def _resolve(args: argparse.Namespace) -> dict[str, object]:
    """Merge flag, config-file, and default values (in that precedence)."""
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(_load_config(args.config))
    for key in _DEFAULTS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            merged[key] = flag_value
    return merged


def _experiment_config(opts: dict[str, object]) -> ExperimentConfig:
    model = ModelSpec(
        str(opts["model"]),
        J=float(opts["J"]),
        h=float(opts["h"]),
        Jx=float(opts["Jx"]),
        Jy=float(opts["Jy"]),
        Jz=float(opts["Jz"]),
    )
    p_min, p_max, p_points = (
        float(opts["p_min"]),
        float(opts["p_max"]),
        int(opts["p_points"]),
    )
    if p_points < 1:
        raise _UsageError(f"--p-points must be positive, got {p_points}")
    if not 0.0 < p_min <= p_max:
        raise _UsageError(f"need 0 < p-min <= p-max, got {p_min} and {p_max}")
    if p_points == 1:
        noise_levels = (p_min,)
    else:
        noise_levels = tuple(
            float(p) for p in np.logspace(np.log10(p_min), np.log10(p_max), p_points)
        )
    try:
        return ExperimentConfig(
            model=model,
            qubits=int(opts["qubits"]),
            dt=float(opts["dt"]),
            steps=int(opts["steps"]),
            noise_levels=noise_levels,
            noise_fraction=float(opts["fraction"]),
            ensemble_size=int(opts["ensemble_size"]),
            base_seed=int(opts["seed"]),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _emit(text: str, out: object) -> None:
    if out:
        with open(str(out), "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _run_build_sequence(opts: dict[str, object]) -> None:
    kind = opts["strategy"]
    if kind is None:
        raise _UsageError("build-sequence requires --strategy")
    try:
        if kind == "fractional":
            strategy = Strategy.fractional(float(opts["fraction"]))
        else:
            strategy = Strategy(str(kind))
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    cfg = _experiment_config(opts)
    h = cfg.model.build(cfg.qubits, cfg.base_seed)
    if opts["dry_run"]:
        length = predicted_length(h.term_count, strategy)
        _emit(f"{length}\n", opts["out"])
        return
    seq = build_sequence(strategy, h, cfg.dt)
    _emit(sequence_to_text(seq), opts["out"])


def _run_info(opts: dict[str, object]) -> None:
    cfg = _experiment_config(opts)
    h = cfg.model.build(cfg.qubits, cfg.base_seed)
    lines = [
        f"suzukilab {__version__} (backend: {backend.backend_name()})",
        f"model: {cfg.model.kind}  qubits: {cfg.qubits}  terms: {h.term_count}",
        f"dt: {cfg.dt!r}  steps: {cfg.steps}",
        "terms:",
    ]
    for i, term in enumerate(h.terms):
        lines.append(f"  [{i}] {term.weight!r} {term.string.letters}")
    lines.append(
        "predicted lengths: shallow="
        + str(predicted_length(h.term_count, Strategy.shallow()))
        + " wide="
        + str(predicted_length(h.term_count, Strategy.wide()))
    )
    _emit("\n".join(lines) + "\n", opts["out"])


def parse_and_dispatch(argv: list[str] | None = None) -> int:
    """Parse arguments, run the requested subcommand, return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = _resolve(args)
        if args.subcommand == "build-sequence":
            _run_build_sequence(opts)
            return 0
        if args.subcommand == "info":
            _run_info(opts)
            return 0
        cfg = _experiment_config(opts)
        runners = {
            "extremal": run_extremal_comparison,
            "fractional-sweep": run_fractional_sweep,
            "ensemble": run_random_ensemble,
            "noise-sweep": run_noise_sweep,
        }
        records = runners[args.subcommand](cfg)
        if opts["out"]:
            write_csv(records, str(opts["out"]))
        else:
            sys.stdout.write(records_to_csv(records))
        return 0
    except _UsageError as exc:
        print(f"suzukilab: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"suzukilab: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    raise SystemExit(parse_and_dispatch())


if __name__ == "__main__":
    console_main()
