"""Experiment runners with seeded determinism and CSV persistence.

Four runners cover the standard studies:

* :func:`run_extremal_comparison` -- shallow vs wide vs hybrid on one
  model, full noiseless trajectories.
* :func:`run_fractional_sweep` -- adds fractional strategies for
  f = 0.1 .. 0.9, full trajectories.
* :func:`run_random_ensemble` -- final-step metrics over an ensemble of
  seeded random Hamiltonians, plus mean/std aggregate rows.
* :func:`run_noise_sweep` -- final-step metrics under depolarizing
  noise across a log-spaced grid of probabilities.

Every runner returns a list of :class:`TrajectoryRecord` in a fixed
canonical order (instance, then strategy, then p, then step), and
:func:`records_to_csv` renders them with 17-significant-digit floats,
so identical configs produce byte-identical CSV.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from suzukilab import backend
from suzukilab.decompose import (
    Strategy,
    SuzukiSequence,
    fractional_sequence,
    hybrid_sequence,
    shallow_sequence,
    wide_sequence,
)
from suzukilab.pauli import (
    Hamiltonian,
    build_random_pauli,
    build_tfim,
    build_xyz,
)
from suzukilab.simulate import (
    _factor_stack,
    bures_distance,
    exact_step_unitary,
    fidelity,
    initial_all_zero,
    magnetization_x,
    sequence_step_unitary,
    trace_distance,
)

CSV_COLUMNS = (
    "experiment",
    "model",
    "L",
    "dt",
    "steps",
    "strategy",
    "fraction",
    "p",
    "instance",
    "step_index",
    "time",
    "seq_length",
    "mag_exact",
    "mag_sim",
    "trace_distance",
    "fidelity",
    "bures",
)

DEFAULT_FRACTIONS = tuple(round(0.1 * i, 1) for i in range(1, 10))
DEFAULT_NOISE_LEVELS = tuple(10.0 ** (-11 + i) for i in range(10))
DEFAULT_SEED = 1234

_MODEL_KINDS = ("tfim", "xyz", "random")


@dataclass(frozen=True)
class ModelSpec:
    """Which Hamiltonian family to build, with its couplings.

    ``random`` instances take their seed from the experiment config at
    build time, not from this spec.
    """

    kind: str
    J: float = 1.0
    h: float = 5.0
    Jx: float = 3.0
    Jy: float = 2.0
    Jz: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in _MODEL_KINDS:
            raise ValueError(f"model kind must be one of {_MODEL_KINDS}, got {self.kind!r}")

    def build(self, qubits: int, seed: int | None = None) -> Hamiltonian:
        if self.kind == "tfim":
            return build_tfim(qubits, self.J, self.h)
        if self.kind == "xyz":
            return build_xyz(qubits, self.Jx, self.Jy, self.Jz)
        if seed is None:
            raise ValueError("random model needs a seed")
        return build_random_pauli(qubits, seed)


@dataclass(frozen=True)
class ExperimentConfig:
    """Shared parameters for all runners.

    Defaults reproduce the standard study: L = 5 qubits, dt = 0.01,
    500 steps, TFIM with J = 1 and h = 5 (XYZ uses 3, 2, 1).
    """

    model: ModelSpec = ModelSpec("tfim")
    qubits: int = 5
    dt: float = 0.01
    steps: int = 500
    fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    noise_levels: tuple[float, ...] = DEFAULT_NOISE_LEVELS
    noise_fraction: float = 0.1
    ensemble_size: int = 100
    base_seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.qubits < 2:
            raise ValueError(f"experiments need at least 2 qubits, got {self.qubits}")
        if self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.steps < 1:
            raise ValueError(f"step count must be positive, got {self.steps}")
        for f in self.fractions:
            if not 0.0 <= f <= 1.0:
                raise ValueError(f"fractions must lie in [0, 1], got {f}")
        for p in self.noise_levels:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"noise levels must lie in [0, 1], got {p}")
        if not 0.0 <= self.noise_fraction <= 1.0:
            raise ValueError(f"noise fraction must lie in [0, 1], got {self.noise_fraction}")
        if self.ensemble_size < 1:
            raise ValueError(f"ensemble size must be positive, got {self.ensemble_size}")


@dataclass(frozen=True)
class TrajectoryRecord:
    """One CSV row; None fields render as empty cells."""

    experiment: str
    model: str
    L: int
    dt: float
    steps: int
    strategy: str
    fraction: float | None = None
    p: float | None = None
    instance: int | str | None = None
    step_index: int | None = None
    time: float | None = None
    seq_length: int | None = None
    mag_exact: float | None = None
    mag_sim: float | None = None
    trace_distance: float | None = None
    fidelity: float | None = None
    bures: float | None = None

    def __post_init__(self) -> None:
        if self.trace_distance is not None and not 0.0 <= self.trace_distance <= 1.0:
            raise ValueError(f"trace distance out of [0, 1]: {self.trace_distance}")
        if self.fidelity is not None and not 0.0 <= self.fidelity <= 1.0:
            raise ValueError(f"fidelity out of [0, 1]: {self.fidelity}")


def _format_cell(value: float | int | str | None) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def records_to_csv(records: list[TrajectoryRecord]) -> str:
    """Render records as CSV text with a header row and LF endings."""
    lines = [",".join(CSV_COLUMNS)]
    for record in records:
        lines.append(",".join(_format_cell(getattr(record, col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def write_csv(records: list[TrajectoryRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(records_to_csv(records))


def percent_magnetization_error(mag_sim: float, mag_exact: float) -> tuple[float, bool]:
    """Percentage magnetization error with a near-zero-reference guard.

    Returns ``(|sim - exact| / |exact| * 100, False)`` normally; when
    ``|exact| < 1e-8`` the relative error is meaningless, so the
    absolute difference times 100 is returned with the flag True.
    """
    if abs(mag_exact) < 1e-8:
        return abs(mag_sim - mag_exact) * 100.0, True
    return abs(mag_sim - mag_exact) / abs(mag_exact) * 100.0, False


def build_sequence(
    strategy: Strategy, h: Hamiltonian, dt: float
) -> SuzukiSequence:
    """Dispatch a strategy tag to its builder."""
    if strategy.kind == "shallow":
        return shallow_sequence(h)
    if strategy.kind == "wide":
        return wide_sequence(h)
    if strategy.kind == "hybrid":
        return hybrid_sequence(h, dt)
    if strategy.kind == "fractional":
        return fractional_sequence(h, dt, strategy.fraction)
    raise ValueError(f"no experiment builder for strategy {strategy.label()!r}")


class _ModelCell:
    """Exact reference data for one Hamiltonian, shared across strategies."""

    def __init__(self, h: Hamiltonian, dt: float, steps: int):
        self.h = h
        self.dt = dt
        self.steps = steps
        self.rho0 = initial_all_zero(h.qubits)
        u_exact = exact_step_unitary(h, dt)
        self.exact_states = backend.unitary_trajectory(u_exact.matrix, self.rho0.data, steps)
        self.exact_mags = [
            magnetization_x(self.exact_states[k], h.qubits) for k in range(steps)
        ]

    def simulate(self, seq: SuzukiSequence, p: float | None) -> np.ndarray:
        """(steps, d, d) trajectory for one strategy, optionally noisy."""
        if p is None:
            u = sequence_step_unitary(self.h, seq, self.dt)
            return backend.unitary_trajectory(u.matrix, self.rho0.data, self.steps)
        stack = _factor_stack(self.h, seq, self.dt)
        return backend.noisy_trajectory(stack, self.rho0.data, self.steps, p)

    def metrics(self, sim_state: np.ndarray, k: int) -> dict[str, float]:
        exact = self.exact_states[k]
        return {
            "mag_exact": self.exact_mags[k],
            "mag_sim": magnetization_x(sim_state, self.h.qubits),
            "trace_distance": trace_distance(exact, sim_state),
            "fidelity": fidelity(exact, sim_state),
            "bures": bures_distance(exact, sim_state),
        }


def _strategy_cells(cfg: ExperimentConfig, include_fractions: bool) -> list[Strategy]:
    cells = [Strategy.shallow()]
    if include_fractions:
        cells.extend(Strategy.fractional(f) for f in cfg.fractions)
    cells.append(Strategy.wide())
    cells.append(Strategy.hybrid())
    return cells


def _trajectory_records(
    experiment: str,
    cfg: ExperimentConfig,
    cell: _ModelCell,
    strategies: list[Strategy],
) -> list[TrajectoryRecord]:
    records = []
    for strategy in strategies:
        seq = build_sequence(strategy, cell.h, cfg.dt)
        states = cell.simulate(seq, None)
        for k in range(cfg.steps):
            records.append(
                TrajectoryRecord(
                    experiment=experiment,
                    model=cfg.model.kind,
                    L=cfg.qubits,
                    dt=cfg.dt,
                    steps=cfg.steps,
                    strategy=strategy.kind,
                    fraction=strategy.fraction,
                    step_index=k + 1,
                    time=(k + 1) * cfg.dt,
                    seq_length=len(seq),
                    **cell.metrics(states[k], k),
                )
            )
    return records


def _model_cell(cfg: ExperimentConfig, seed: int | None = None) -> _ModelCell:
    h = cfg.model.build(cfg.qubits, seed if seed is not None else cfg.base_seed)
    return _ModelCell(h, cfg.dt, cfg.steps)


def run_extremal_comparison(cfg: ExperimentConfig) -> list[TrajectoryRecord]:
    """Shallow vs wide vs hybrid, full noiseless trajectories."""
    cell = _model_cell(cfg)
    strategies = [Strategy.shallow(), Strategy.wide(), Strategy.hybrid()]
    return _trajectory_records("extremal", cfg, cell, strategies)


def run_fractional_sweep(cfg: ExperimentConfig) -> list[TrajectoryRecord]:
    """Shallow, all fractional budgets, wide, and hybrid trajectories."""
    cell = _model_cell(cfg)
    return _trajectory_records(
        "fractional-sweep", cfg, cell, _strategy_cells(cfg, include_fractions=True)
    )


def run_random_ensemble(cfg: ExperimentConfig) -> list[TrajectoryRecord]:
    """Final-step metrics over seeded random instances, plus aggregates.

    Instance i uses Hamiltonian seed ``base_seed + i``.  Aggregate rows
    carry the ensemble mean and population standard deviation of the
    final trace distance in the ``instance`` column slots ``mean`` and
    ``std``.
    """
    strategies = _strategy_cells(cfg, include_fractions=True)
    records = []
    finals: dict[str, list[float]] = {s.label(): [] for s in strategies}
    model = ModelSpec("random")
    cfg = replace(cfg, model=model)
    for i in range(cfg.ensemble_size):
        cell = _model_cell(cfg, seed=cfg.base_seed + i)
        for strategy in strategies:
            seq = build_sequence(strategy, cell.h, cfg.dt)
            states = cell.simulate(seq, None)
            final = cfg.steps - 1
            metrics = cell.metrics(states[final], final)
            finals[strategy.label()].append(metrics["trace_distance"])
            records.append(
                TrajectoryRecord(
                    experiment="ensemble",
                    model="random",
                    L=cfg.qubits,
                    dt=cfg.dt,
                    steps=cfg.steps,
                    strategy=strategy.kind,
                    fraction=strategy.fraction,
                    instance=i,
                    step_index=cfg.steps,
                    time=cfg.steps * cfg.dt,
                    seq_length=len(seq),
                    **metrics,
                )
            )
    for strategy in strategies:
        values = np.array(finals[strategy.label()])
        for tag, value in (("mean", float(values.mean())), ("std", float(values.std()))):
            records.append(
                TrajectoryRecord(
                    experiment="ensemble",
                    model="random",
                    L=cfg.qubits,
                    dt=cfg.dt,
                    steps=cfg.steps,
                    strategy=strategy.kind,
                    fraction=strategy.fraction,
                    instance=tag,
                    step_index=cfg.steps,
                    time=cfg.steps * cfg.dt,
                    trace_distance=value,
                )
            )
    return records


def run_noise_sweep(cfg: ExperimentConfig) -> list[TrajectoryRecord]:
    """Final-step metrics under per-factor depolarizing noise.

    Strategies are shallow, wide, and fractional(noise_fraction); the
    reference trajectory is always noiseless and exact.
    """
    if not cfg.noise_levels:
        raise ValueError("noise sweep needs at least one noise level")
    cell = _model_cell(cfg)
    strategies = [
        Strategy.shallow(),
        Strategy.wide(),
        Strategy.fractional(cfg.noise_fraction),
    ]
    records = []
    for strategy in strategies:
        seq = build_sequence(strategy, cell.h, cfg.dt)
        for p in sorted(cfg.noise_levels):
            states = cell.simulate(seq, p)
            final = cfg.steps - 1
            records.append(
                TrajectoryRecord(
                    experiment="noise-sweep",
                    model=cfg.model.kind,
                    L=cfg.qubits,
                    dt=cfg.dt,
                    steps=cfg.steps,
                    strategy=strategy.kind,
                    fraction=strategy.fraction,
                    p=p,
                    step_index=cfg.steps,
                    time=cfg.steps * cfg.dt,
                    seq_length=len(seq),
                    **cell.metrics(states[final], final),
                )
            )
    return records
