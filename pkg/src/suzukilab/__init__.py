"""Second-order Suzuki product formulas for multi-term spin Hamiltonians.

The package splits into five layers:

* :mod:`suzukilab.pauli` -- Pauli strings, weighted terms, Hamiltonian
  containers, model builders, and dense-matrix helpers.
* :mod:`suzukilab.decompose` -- product-formula construction: shallow,
  wide, hybrid, fractional, and higher-order Suzuki sequences.
* :mod:`suzukilab.simulate` -- exact density-matrix evolution, with and
  without depolarizing noise, plus distance and fidelity measures.
* :mod:`suzukilab.experiments` -- reproducible sweep runners that emit
  deterministic CSV.
* :mod:`suzukilab.cli` -- the ``suzukilab`` command-line entry point.
"""

from suzukilab.pauli import (
    Hamiltonian,
    HamiltonianTerm,
    PauliString,
    build_random_pauli,
    build_tfim,
    build_xyz,
    commutator,
    dense_pauli,
    hamiltonian_from_text,
    hamiltonian_matrix,
    hamiltonian_to_text,
    spectral_norm,
)
from suzukilab.decompose import (
    Factor,
    StepChoice,
    Strategy,
    SuzukiSequence,
    compose_higher_order,
    fractional_sequence,
    hybrid_sequence,
    local_step_bound,
    predicted_length,
    sequence_from_text,
    sequence_to_text,
    shallow_sequence,
    suzuki_weight,
    wide_sequence,
)
from suzukilab.simulate import (
    DensityMatrix,
    StepUnitary,
    bures_distance,
    depolarize,
    evolve_noiseless,
    evolve_with_noise,
    exact_step_unitary,
    factor_unitary,
    fidelity,
    initial_all_zero,
    magnetization_x,
    sequence_step_unitary,
    trace_distance,
)

__version__ = "0.1.0"

__all__ = [
    "Hamiltonian",
    "HamiltonianTerm",
    "PauliString",
    "build_random_pauli",
    "build_tfim",
    "build_xyz",
    "commutator",
    "dense_pauli",
    "hamiltonian_from_text",
    "hamiltonian_matrix",
    "hamiltonian_to_text",
    "spectral_norm",
    "Factor",
    "StepChoice",
    "Strategy",
    "SuzukiSequence",
    "compose_higher_order",
    "fractional_sequence",
    "hybrid_sequence",
    "local_step_bound",
    "predicted_length",
    "sequence_from_text",
    "sequence_to_text",
    "shallow_sequence",
    "suzuki_weight",
    "wide_sequence",
    "DensityMatrix",
    "StepUnitary",
    "bures_distance",
    "depolarize",
    "evolve_noiseless",
    "evolve_with_noise",
    "exact_step_unitary",
    "factor_unitary",
    "fidelity",
    "initial_all_zero",
    "magnetization_x",
    "sequence_step_unitary",
    "trace_distance",
    "__version__",
]
