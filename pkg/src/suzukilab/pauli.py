"""Pauli strings, weighted Hamiltonian terms, and dense-matrix helpers.

Conventions used throughout the package:

* Site 0 is the leftmost letter of a Pauli string and the leftmost
  (most significant) factor of the Kronecker product, so ``"XZ"``
  denotes X on qubit 0 tensored with Z on qubit 1.
* Chains are open: bond builders couple sites ``(j, j + 1)`` for
  ``j = 0 .. L - 2`` only.
* Term order is part of a Hamiltonian's value.  Decomposition
  strategies consume terms in list order, so two Hamiltonians with the
  same terms in different orders are different objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Largest qubit count for which dense matrices are materialised by default.
DEFAULT_MAX_QUBITS = 12

_VALID_LETTERS = frozenset("IXYZ")

_SINGLE_QUBIT = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
}


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli word such as ``"ZZIII"``.

    Attributes:
        letters: One character per site from ``{I, X, Y, Z}``; site 0
            is the leftmost character.
    """

    letters: str

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("Pauli string must cover at least one qubit")
        bad = set(self.letters) - _VALID_LETTERS
        if bad:
            raise ValueError(
                f"Pauli string may only contain I, X, Y, Z; got {sorted(bad)!r}"
            )

    @property
    def qubits(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class HamiltonianTerm:
    """A real-weighted Pauli string.

    Attributes:
        weight: Real coefficient; must be finite and nonzero.  Zero
            weights are rejected so the term count of a Hamiltonian is
            always meaningful to the decomposition layer.
        string: The Pauli word the weight multiplies.
    """

    weight: float
    string: PauliString

    def __post_init__(self) -> None:
        w = float(self.weight)
        if not math.isfinite(w):
            raise ValueError(f"term weight must be finite, got {self.weight!r}")
        if w == 0.0:
            raise ValueError("term weight must be nonzero")
        object.__setattr__(self, "weight", w)

    @property
    def qubits(self) -> int:
        return self.string.qubits


@dataclass(frozen=True)
class Hamiltonian:
    """An ordered sum of weighted Pauli strings on a fixed register.

    Attributes:
        qubits: Register size L; every term must act on exactly L sites.
        terms: Nonempty tuple of :class:`HamiltonianTerm`, in the order
            decomposition strategies will consume them.
    """

    qubits: int
    terms: tuple[HamiltonianTerm, ...]

    def __post_init__(self) -> None:
        if self.qubits < 1:
            raise ValueError(f"qubit count must be positive, got {self.qubits}")
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("Hamiltonian needs at least one term")
        for i, term in enumerate(terms):
            if term.qubits != self.qubits:
                raise ValueError(
                    f"term {i} acts on {term.qubits} qubits, expected {self.qubits}"
                )
        object.__setattr__(self, "terms", terms)

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def term_matrix(self, index: int, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
        """Dense matrix of a single weighted term."""
        term = self.terms[index]
        return term.weight * dense_pauli(term.string, max_qubits=max_qubits)


def dense_pauli(string: PauliString | str, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Dense ``(2**L, 2**L)`` complex matrix of a Pauli word.

    Site 0 is the leftmost Kronecker factor.  Registers larger than
    ``max_qubits`` are refused rather than silently allocating.
    """
    if isinstance(string, str):
        string = PauliString(string)
    if string.qubits > max_qubits:
        raise ValueError(
            f"dense matrix for {string.qubits} qubits exceeds the cap of {max_qubits}"
        )
    out = _SINGLE_QUBIT[string.letters[0]]
    for letter in string.letters[1:]:
        out = np.kron(out, _SINGLE_QUBIT[letter])
    return out


def hamiltonian_matrix(h: Hamiltonian, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Dense matrix of the full weighted sum."""
    dim = 2**h.qubits
    if h.qubits > max_qubits:
        raise ValueError(
            f"dense matrix for {h.qubits} qubits exceeds the cap of {max_qubits}"
        )
    out = np.zeros((dim, dim), dtype=np.complex128)
    for term in h.terms:
        out += term.weight * dense_pauli(term.string, max_qubits=max_qubits)
    return out


def _site_string(qubits: int, placements: dict[int, str]) -> PauliString:
    letters = ["I"] * qubits
    for site, letter in placements.items():
        letters[site] = letter
    return PauliString("".join(letters))


def build_tfim(qubits: int, J: float, h: float) -> Hamiltonian:
    """Transverse-field Ising chain ``-J sum Z_j Z_{j+1} - h sum X_j``.

    Terms are ordered: the L - 1 ZZ bonds left to right, then the L
    transverse fields left to right, giving 2L - 1 terms.  Both J and h
    must be nonzero because zero-weight terms are rejected.
    """
    if qubits < 2:
        raise ValueError(f"TFIM chain needs at least 2 qubits, got {qubits}")
    terms = []
    for j in range(qubits - 1):
        terms.append(HamiltonianTerm(-J, _site_string(qubits, {j: "Z", j + 1: "Z"})))
    for j in range(qubits):
        terms.append(HamiltonianTerm(-h, _site_string(qubits, {j: "X"})))
    return Hamiltonian(qubits, tuple(terms))


def build_xyz(qubits: int, Jx: float, Jy: float, Jz: float) -> Hamiltonian:
    """Heisenberg XYZ chain with per-axis couplings.

    Terms are ordered bond by bond: for each bond j the triple
    ``(Jx X_j X_{j+1}, Jy Y_j Y_{j+1}, Jz Z_j Z_{j+1})``, giving
    3(L - 1) terms.  Every coupling must be nonzero so the term count
    stays 3(L - 1).
    """
    if qubits < 2:
        raise ValueError(f"XYZ chain needs at least 2 qubits, got {qubits}")
    for name, value in (("Jx", Jx), ("Jy", Jy), ("Jz", Jz)):
        if float(value) == 0.0:
            raise ValueError(f"XYZ coupling {name} must be nonzero")
    terms = []
    for j in range(qubits - 1):
        for coupling, letter in ((Jx, "X"), (Jy, "Y"), (Jz, "Z")):
            terms.append(
                HamiltonianTerm(coupling, _site_string(qubits, {j: letter, j + 1: letter}))
            )
    return Hamiltonian(qubits, tuple(terms))


def build_random_pauli(qubits: int, seed: int) -> Hamiltonian:
    """Random nearest-neighbour Pauli Hamiltonian with unit weights.

    Draw order is fixed so instances are reproducible from the seed:
    first one single-site letter per site, left to right, uniform over
    {X, Y, Z}; then one ordered letter pair per bond, left to right,
    uniform over the 9 non-identity pairs.  All 2L - 1 weights are 1.
    """
    if qubits < 2:
        raise ValueError(f"random chain needs at least 2 qubits, got {qubits}")
    rng = np.random.default_rng(seed)
    single = "XYZ"
    terms = []
    for j in range(qubits):
        letter = single[rng.integers(0, 3)]
        terms.append(HamiltonianTerm(1.0, _site_string(qubits, {j: letter})))
    for j in range(qubits - 1):
        pair = int(rng.integers(0, 9))
        left, right = single[pair // 3], single[pair % 3]
        terms.append(
            HamiltonianTerm(1.0, _site_string(qubits, {j: left, j + 1: right}))
        )
    return Hamiltonian(qubits, tuple(terms))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix commutator ``a @ b - b @ a``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def spectral_norm(a: np.ndarray) -> float:
    """Operator 2-norm (largest singular value).

    Hermitian and anti-Hermitian inputs take the eigenvalue route,
    which is both faster and exact for the nested commutators this
    package feeds it; anything else falls back to singular values.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        return 0.0
    tol = 1e-13 * scale
    adj = a.conj().T
    if np.max(np.abs(a - adj)) <= tol:
        return float(np.max(np.abs(np.linalg.eigvalsh(a))))
    if np.max(np.abs(a + adj)) <= tol:
        return float(np.max(np.abs(np.linalg.eigvalsh(1j * a))))
    return float(np.linalg.norm(a, 2))


def hamiltonian_to_text(h: Hamiltonian) -> str:
    """Serialise to the plain-text format.

    Line 1 is ``qubits=<L>``; each further line is ``<weight> <letters>``
    with the weight printed via ``repr`` so parsing reproduces the
    exact float.
    """
    lines = [f"qubits={h.qubits}"]
    for term in h.terms:
        lines.append(f"{term.weight!r} {term.string.letters}")
    return "\n".join(lines) + "\n"


def hamiltonian_from_text(text: str) -> Hamiltonian:
    """Parse the format written by :func:`hamiltonian_to_text`."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty Hamiltonian text")
    header = lines[0].strip()
    if not header.startswith("qubits="):
        raise ValueError(f"expected 'qubits=<L>' header, got {header!r}")
    try:
        qubits = int(header.removeprefix("qubits="))
    except ValueError as exc:
        raise ValueError(f"bad qubit count in header {header!r}") from exc
    terms = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"expected '<weight> <letters>', got {line!r}")
        terms.append(HamiltonianTerm(float(parts[0]), PauliString(parts[1])))
    return Hamiltonian(qubits, tuple(terms))
