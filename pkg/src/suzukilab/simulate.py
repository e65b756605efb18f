"""Exact density-matrix evolution and state-distance metrics.

The evolution model is deliberately simple: the Hamiltonian is time
independent and the timestep uniform, so the noiseless path computes a
single step unitary once and applies ``rho -> U rho U^H`` r times.
With depolarizing noise the channel acts after every factor
exponential, which forces factor-by-factor density-matrix updates; the
per-factor unitaries are still precomputed once.  The repeated-product
hot loops live in :mod:`suzukilab.backend`.

Ordering convention: ``factors[0]`` of a sequence acts on the state
first, i.e. it sits rightmost in the matrix product.  Palindromic
sequences hide ordering bugs, so tests pin this with asymmetric ones.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from suzukilab import backend
from suzukilab.decompose import SuzukiSequence
from suzukilab.pauli import Hamiltonian, HamiltonianTerm, dense_pauli, hamiltonian_matrix

#: Eigenvalues of a state may undershoot zero by at most this much
#: before the matrix is rejected as not positive semidefinite.
PSD_TOLERANCE = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A quantum state: Hermitian, unit-trace, PSD complex matrix.

    Construction normalises the buffer (complex dtype, C order,
    read-only) and checks the shape; the numerical invariants are
    checked by :meth:`validate`, which trajectory code calls in tests
    rather than on every step.
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=np.complex128, order="C")
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError(f"state must be a square matrix, got shape {data.shape}")
        if data.shape[0] & (data.shape[0] - 1):
            raise ValueError(f"state dimension must be a power of 2, got {data.shape[0]}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def qubits(self) -> int:
        return self.dim.bit_length() - 1

    def purity(self) -> float:
        return float(np.real(np.trace(self.data @ self.data)))

    def validate(self, *, atol: float = 1e-10) -> None:
        """Raise ValueError unless Hermitian, unit trace, and PSD within atol."""
        data = self.data
        if np.max(np.abs(data - data.conj().T)) > atol:
            raise ValueError("state is not Hermitian within tolerance")
        if abs(np.trace(data) - 1.0) > atol:
            raise ValueError("state trace differs from 1 beyond tolerance")
        lowest = float(np.min(np.linalg.eigvalsh(data)))
        if lowest < -atol:
            raise ValueError(f"state has negative eigenvalue {lowest}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )


@dataclass(frozen=True, eq=False)
class StepUnitary:
    """One evolution step ``U`` with a provenance tag.

    ``provenance`` is ``"exact"`` for the eigendecomposition route,
    ``"sequence:<strategy label>"`` for product formulas, and
    ``"factor"`` for single exponentials.
    """

    matrix: np.ndarray
    provenance: str

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128, order="C")
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"unitary must be square, got shape {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self, *, atol: float = 1e-10) -> None:
        """Raise ValueError unless actually unitary within atol."""
        gram = self.matrix.conj().T @ self.matrix
        if np.max(np.abs(gram - np.eye(self.dim))) > atol:
            raise ValueError("matrix is not unitary within tolerance")


def _state_array(state: DensityMatrix | np.ndarray) -> np.ndarray:
    if isinstance(state, DensityMatrix):
        return state.data
    return np.asarray(state, dtype=np.complex128)


def initial_all_zero(qubits: int) -> DensityMatrix:
    """The pure state |0...0><0...0|."""
    if qubits < 1:
        raise ValueError(f"qubit count must be positive, got {qubits}")
    data = np.zeros((2**qubits, 2**qubits), dtype=np.complex128)
    data[0, 0] = 1.0
    return DensityMatrix(data)


def exact_step_unitary(h: Hamiltonian, dt: float) -> StepUnitary:
    """``exp(-i H dt)`` via Hermitian eigendecomposition."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    matrix = hamiltonian_matrix(h)
    energies, vectors = np.linalg.eigh(matrix)
    phases = np.exp(-1j * energies * dt)
    return StepUnitary((vectors * phases) @ vectors.conj().T, "exact")


def factor_unitary(term: HamiltonianTerm, coefficient: float, dt: float) -> StepUnitary:
    """``exp(-i * theta * P)`` with theta = weight * coefficient * dt.

    Uses the closed form ``cos(theta) I - i sin(theta) P``, valid
    because every Pauli string squares to the identity.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    pauli = dense_pauli(term.string)
    theta = term.weight * coefficient * dt
    matrix = math.cos(theta) * np.eye(pauli.shape[0], dtype=np.complex128)
    matrix -= 1j * math.sin(theta) * pauli
    return StepUnitary(matrix, "factor")


def _factor_stack(h: Hamiltonian, seq: SuzukiSequence, dt: float) -> np.ndarray:
    """(n, d, d) array of factor unitaries, in application order."""
    if seq.term_count != h.term_count:
        raise ValueError(
            f"sequence addresses {seq.term_count} terms but the Hamiltonian "
            f"has {h.term_count}"
        )
    d = 2**h.qubits
    paulis = {}
    eye = np.eye(d, dtype=np.complex128)
    stack = np.empty((len(seq.factors), d, d), dtype=np.complex128)
    for i, factor in enumerate(seq.factors):
        if factor.term_index not in paulis:
            paulis[factor.term_index] = dense_pauli(h.terms[factor.term_index].string)
        theta = h.terms[factor.term_index].weight * factor.coefficient * dt
        stack[i] = math.cos(theta) * eye - 1j * math.sin(theta) * paulis[factor.term_index]
    return stack


def sequence_step_unitary(h: Hamiltonian, seq: SuzukiSequence, dt: float) -> StepUnitary:
    """Product of all factor unitaries; ``factors[0]`` applied first.

    The first listed factor acts first on the state, so it is the
    rightmost matrix in the product.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    stack = _factor_stack(h, seq, dt)
    return StepUnitary(backend.chain_product(stack), f"sequence:{seq.strategy.label()}")


def evolve_noiseless(rho0: DensityMatrix, u: StepUnitary, steps: int) -> list[DensityMatrix]:
    """Trajectory ``rho_k = U rho_{k-1} U^H`` for k = 1..steps.

    The step unitary is applied as-is each step; it is computed once by
    the caller and reused.
    """
    if steps < 1:
        raise ValueError(f"step count must be positive, got {steps}")
    if u.dim != rho0.dim:
        raise ValueError(f"dimension mismatch: state {rho0.dim}, unitary {u.dim}")
    states = backend.unitary_trajectory(u.matrix, rho0.data, steps)
    return [DensityMatrix(states[k]) for k in range(steps)]


def depolarize(rho: DensityMatrix | np.ndarray, p: float) -> DensityMatrix:
    """Depolarizing channel ``rho -> (1 - p) rho + p I / d`` on the full register."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise probability must lie in [0, 1], got {p}")
    data = _state_array(rho)
    d = data.shape[0]
    out = (1.0 - p) * data + (p / d) * np.eye(d, dtype=np.complex128)
    return DensityMatrix(out)


def evolve_with_noise(
    rho0: DensityMatrix,
    h: Hamiltonian,
    seq: SuzukiSequence,
    dt: float,
    steps: int,
    p: float,
) -> list[DensityMatrix]:
    """Trajectory where depolarizing noise follows every factor exponential.

    One timestep applies, for each factor in sequence order,
    ``rho -> (1 - p) F rho F^H + p I / d``; states are recorded after
    each full timestep.  Factor unitaries are precomputed once.
    """
    if steps < 1:
        raise ValueError(f"step count must be positive, got {steps}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise probability must lie in [0, 1], got {p}")
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    stack = _factor_stack(h, seq, dt)
    if stack.shape[1] != rho0.dim:
        raise ValueError(f"dimension mismatch: state {rho0.dim}, factors {stack.shape[1]}")
    states = backend.noisy_trajectory(stack, rho0.data, steps, p)
    return [DensityMatrix(states[k]) for k in range(steps)]


@functools.lru_cache(maxsize=None)
def _mean_x_observable(qubits: int) -> np.ndarray:
    # (1/L) sum_j X_j as a dense matrix; cached per register size.
    total = np.zeros((2**qubits, 2**qubits), dtype=np.complex128)
    for j in range(qubits):
        letters = ["I"] * qubits
        letters[j] = "X"
        total += dense_pauli("".join(letters))
    return total / qubits


def magnetization_x(rho: DensityMatrix | np.ndarray, qubits: int | None = None) -> float:
    """Site-averaged X magnetization ``(1/L) sum_j Tr(rho X_j)``."""
    data = _state_array(rho)
    if qubits is None:
        qubits = data.shape[0].bit_length() - 1
    if data.shape[0] != 2**qubits:
        raise ValueError(
            f"state dimension {data.shape[0]} does not match {qubits} qubits"
        )
    value = np.einsum("ij,ji->", data, _mean_x_observable(qubits))
    return float(np.real(value))


def trace_distance(a: DensityMatrix | np.ndarray, b: DensityMatrix | np.ndarray) -> float:
    """``(1/2) sum |eigenvalues(a - b)|``, clamped into [0, 1].

    The difference is sign-normalised before the eigendecomposition so
    the result is bitwise symmetric in its arguments.
    """
    da = _state_array(a)
    db = _state_array(b)
    if da.shape != db.shape:
        raise ValueError(f"shape mismatch: {da.shape} vs {db.shape}")
    diff = da - db
    flat = diff.ravel()
    nonzero = np.nonzero(flat)[0]
    if nonzero.size == 0:
        return 0.0
    pivot = flat[nonzero[0]]
    if pivot.real < 0.0 or (pivot.real == 0.0 and pivot.imag < 0.0):
        diff = -diff
    value = 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
    return min(value, 1.0)


def _clamped_psd_eigh(data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, vectors = np.linalg.eigh(data)
    lowest = float(values[0])
    if lowest < -PSD_TOLERANCE:
        raise ValueError(
            f"matrix has eigenvalue {lowest}, below the PSD tolerance "
            f"{-PSD_TOLERANCE}; not a valid state"
        )
    return np.clip(values, 0.0, None), vectors


def fidelity(a: DensityMatrix | np.ndarray, b: DensityMatrix | np.ndarray) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(a) b sqrt(a)))**2`` in [0, 1].

    When either argument is pure the stable shortcut ``<psi| other |psi>``
    is used instead of the double matrix square root.
    """
    da = _state_array(a)
    db = _state_array(b)
    if da.shape != db.shape:
        raise ValueError(f"shape mismatch: {da.shape} vs {db.shape}")
    value = _fidelity_value(da, db)
    return float(min(max(value, 0.0), 1.0))


def _purity(data: np.ndarray) -> float:
    return float(np.real(np.einsum("ij,ji->", data, data)))


def _fidelity_value(da: np.ndarray, db: np.ndarray) -> float:
    pure_tol = 1e-8
    if _purity(da) >= 1.0 - pure_tol:
        psi = _clamped_psd_eigh(da)[1][:, -1]
        return float(np.real(psi.conj() @ db @ psi))
    if _purity(db) >= 1.0 - pure_tol:
        psi = _clamped_psd_eigh(db)[1][:, -1]
        return float(np.real(psi.conj() @ da @ psi))
    values_a, vectors_a = _clamped_psd_eigh(da)
    sqrt_a = (vectors_a * np.sqrt(values_a)) @ vectors_a.conj().T
    middle = sqrt_a @ db @ sqrt_a
    values_m, _ = _clamped_psd_eigh(0.5 * (middle + middle.conj().T))
    return float(np.sum(np.sqrt(values_m)) ** 2)


def bures_distance(a: DensityMatrix | np.ndarray, b: DensityMatrix | np.ndarray) -> float:
    """Bures distance ``sqrt(2 (1 - sqrt(F)))`` from the Uhlmann fidelity."""
    root_f = math.sqrt(fidelity(a, b))
    return math.sqrt(2.0 * max(1.0 - root_f, 0.0))
