"""Second-order Suzuki product-formula construction.

A step of size dt for ``H = sum_i H_i`` is approximated by a sequence
of factors ``exp(-i * c * H_t * dt)``, recorded as ``(t, c)`` pairs.
All builders here produce symmetric (palindromic in term index)
second-order sequences whose per-term coefficients sum to 1:

* **shallow** -- peel terms off the front, each wrapped symmetrically
  around the rest at half weight.  Length 2m - 1; circuit depth grows
  linearly with the term count.
* **wide** -- place each peeled term in the middle and duplicate the
  rest at half scale on both sides.  Length 2**m - 1.
* **hybrid** -- at each peel, greedily choose the (term, placement)
  pair with the smallest local commutator error bound.
* **fractional** -- interpolate: a fixed budget of wide-style peels
  first, shallow-style peels after, with the term chosen greedily at
  each peel.

Higher-order sequences come from the standard Suzuki recursion applied
to any of the above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from suzukilab.pauli import Hamiltonian, commutator, spectral_norm

#: Builders refuse to produce sequences longer than this by default.
DEFAULT_MAX_FACTORS = 2**24

_SHALLOW = "shallow"
_WIDE = "wide"


@dataclass(frozen=True)
class Factor:
    """One exponential factor ``exp(-i * coefficient * H_term * dt)``.

    Attributes:
        term_index: Index into the Hamiltonian's term list.
        coefficient: Dimensionless multiple of the step size dt.
    """

    term_index: int
    coefficient: float

    def __post_init__(self) -> None:
        if self.term_index < 0:
            raise ValueError(f"term index must be nonnegative, got {self.term_index}")
        if not math.isfinite(self.coefficient) or self.coefficient == 0.0:
            raise ValueError(
                f"factor coefficient must be finite and nonzero, got {self.coefficient!r}"
            )


@dataclass(frozen=True)
class Strategy:
    """Which construction produced a sequence.

    ``kind`` is one of ``shallow``, ``wide``, ``hybrid``, ``fractional``
    or ``higher-order``; ``fraction`` carries the wide budget for
    fractional sequences and ``suzuki_k`` the recursion index k (the
    resulting formula has order 2k) for higher-order ones.
    """

    kind: str
    fraction: float | None = None
    suzuki_k: int | None = None

    _KINDS = ("shallow", "wide", "hybrid", "fractional", "higher-order")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if (self.kind == "fractional") != (self.fraction is not None):
            raise ValueError("fraction is set if and only if kind is 'fractional'")
        if (self.kind == "higher-order") != (self.suzuki_k is not None):
            raise ValueError("suzuki_k is set if and only if kind is 'higher-order'")
        if self.fraction is not None and not 0.0 <= self.fraction <= 1.0:
            raise ValueError(f"fraction must lie in [0, 1], got {self.fraction}")
        if self.suzuki_k is not None and self.suzuki_k < 2:
            raise ValueError(f"the Suzuki recursion starts at k=2, got {self.suzuki_k}")

    @classmethod
    def shallow(cls) -> "Strategy":
        return cls("shallow")

    @classmethod
    def wide(cls) -> "Strategy":
        return cls("wide")

    @classmethod
    def hybrid(cls) -> "Strategy":
        return cls("hybrid")

    @classmethod
    def fractional(cls, fraction: float) -> "Strategy":
        return cls("fractional", fraction=float(fraction))

    @classmethod
    def higher_order(cls, k: int) -> "Strategy":
        return cls("higher-order", suzuki_k=int(k))

    def label(self) -> str:
        """Round-trippable text form, e.g. ``fractional(0.1)``."""
        if self.kind == "fractional":
            return f"fractional({self.fraction!r})"
        if self.kind == "higher-order":
            return f"higher-order({self.suzuki_k})"
        return self.kind

    @classmethod
    def parse(cls, label: str) -> "Strategy":
        label = label.strip()
        if label.startswith("fractional(") and label.endswith(")"):
            return cls.fractional(float(label[len("fractional(") : -1]))
        if label.startswith("higher-order(") and label.endswith(")"):
            return cls.higher_order(int(label[len("higher-order(") : -1]))
        return cls(label)


@dataclass(frozen=True)
class StepChoice:
    """One greedy decision made while building a hybrid or fractional sequence."""

    term_index: int
    step_type: str
    bound: float

    def __post_init__(self) -> None:
        if self.step_type not in (_SHALLOW, _WIDE):
            raise ValueError(f"step type must be shallow or wide, got {self.step_type!r}")


@dataclass(frozen=True)
class SuzukiSequence:
    """An ordered product formula for one time step.

    ``factors[0]`` is applied to the state first.  Equality compares the
    factor list, term count, and strategy; the greedy-construction
    metadata (``wide_steps``, ``choices``) is informational and excluded
    so that a sequence survives a serialisation round trip unchanged.
    """

    term_count: int
    strategy: Strategy
    factors: tuple[Factor, ...]
    wide_steps: int = field(default=0, compare=False)
    choices: tuple[StepChoice, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.term_count < 1:
            raise ValueError("sequence needs a positive term count")
        if not self.factors:
            raise ValueError("sequence needs at least one factor")
        for f in self.factors:
            if f.term_index >= self.term_count:
                raise ValueError(
                    f"factor references term {f.term_index} but only "
                    f"{self.term_count} terms exist"
                )

    def __len__(self) -> int:
        return len(self.factors)

    def coefficient_sums(self) -> np.ndarray:
        """Total coefficient per term; 1.0 everywhere for second order."""
        sums = np.zeros(self.term_count)
        for f in self.factors:
            sums[f.term_index] += f.coefficient
        return sums


def _check_cap(length: int, max_factors: int) -> None:
    if length > max_factors:
        raise ValueError(
            f"sequence would contain {length} factors, exceeding the cap of "
            f"{max_factors}"
        )


def shallow_sequence(h: Hamiltonian, *, max_factors: int = DEFAULT_MAX_FACTORS) -> SuzukiSequence:
    """Symmetric sequence peeling terms in order into outer half-weight pairs.

    For terms ``0 .. m-1`` the result is ``(0, 1/2) ... (m-1, 1) ... (0, 1/2)``
    with length 2m - 1.
    """
    m = h.term_count
    _check_cap(2 * m - 1, max_factors)
    factors = [Factor(m - 1, 1.0)]
    for t in range(m - 2, -1, -1):
        half = Factor(t, 0.5)
        factors = [half] + factors + [half]
    return SuzukiSequence(m, Strategy.shallow(), tuple(factors))


def wide_sequence(h: Hamiltonian, *, max_factors: int = DEFAULT_MAX_FACTORS) -> SuzukiSequence:
    """Symmetric sequence peeling terms in order into the middle position.

    Each peeled term keeps the full current scale while the remainder is
    duplicated on both sides at half scale, so the length satisfies
    ``N_m = 2 N_{m-1} + 1``, i.e. 2**m - 1.  The final two terms form a
    plain symmetric pair.
    """
    m = h.term_count
    _check_cap(2**m - 1, max_factors)
    factors = _wide_factors(list(range(m)), 1.0, top=True)
    return SuzukiSequence(m, Strategy.wide(), tuple(factors), wide_steps=m - 1)


def _wide_factors(indices: list[int], scale: float, top: bool) -> list[Factor]:
    if len(indices) == 1:
        return [Factor(indices[0], scale)]
    if len(indices) == 2:
        y, z = indices
        if top:
            # A bare two-term Hamiltonian splits with the later term outside.
            return [Factor(z, scale / 2), Factor(y, scale), Factor(z, scale / 2)]
        return [Factor(y, scale / 2), Factor(z, scale), Factor(y, scale / 2)]
    inner = _wide_factors(indices[1:], scale / 2, top=False)
    return inner + [Factor(indices[0], scale)] + inner


def local_step_bound(
    term_matrix: np.ndarray, rest_matrix: np.ndarray, dt: float, step_type: str
) -> float:
    """Commutator bound on the error of one symmetric peel.

    For a shallow peel (term outside, rest inside) the bound is
    ``dt**3 * (||[T, [T, R]]|| + 2 ||[R, [T, R]]||)``; a wide peel swaps
    the roles of term and rest.  Norms are spectral.
    """
    if step_type not in (_SHALLOW, _WIDE):
        raise ValueError(f"step type must be shallow or wide, got {step_type!r}")
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    term_matrix = np.asarray(term_matrix)
    rest_matrix = np.asarray(rest_matrix)
    if term_matrix.shape != rest_matrix.shape:
        raise ValueError(
            f"shape mismatch: {term_matrix.shape} vs {rest_matrix.shape}"
        )
    if step_type == _SHALLOW:
        a, b = term_matrix, rest_matrix
    else:
        a, b = rest_matrix, term_matrix
    inner = commutator(a, b)
    return dt**3 * (
        spectral_norm(commutator(a, inner)) + 2.0 * spectral_norm(commutator(b, inner))
    )


def _greedy_plan(
    h: Hamiltonian,
    dt: float,
    forced_types: list[str] | None,
) -> tuple[list[tuple[int, str, float]], list[StepChoice]]:
    """Peel terms greedily by the local bound.

    Returns the peel plan as ``(term, step_type, scale)`` triples plus
    the recorded choices.  When ``forced_types`` is given the step type
    of each peel is fixed and only the term is chosen; otherwise both
    are chosen jointly.  Ties break toward shallow, then the lowest
    term index.
    """
    m = h.term_count
    mats = [h.term_matrix(i) for i in range(m)]
    total = np.sum(mats, axis=0)
    remaining = list(range(m))
    scale = 1.0
    plan: list[tuple[int, str, float]] = []
    choices: list[StepChoice] = []
    step = 0
    while len(remaining) > 1:
        types = (forced_types[step],) if forced_types is not None else (_SHALLOW, _WIDE)
        best: tuple[float, int, int] | None = None
        best_pick: tuple[int, str, float] | None = None
        for t in remaining:
            rest = total - mats[t]
            for st in types:
                bound = local_step_bound(mats[t], rest, dt * scale, st)
                key = (bound, 0 if st == _SHALLOW else 1, t)
                if best is None or key < best:
                    best = key
                    best_pick = (t, st, bound)
        assert best_pick is not None
        t, st, bound = best_pick
        plan.append((t, st, scale))
        choices.append(StepChoice(t, st, bound))
        total = total - mats[t]
        remaining.remove(t)
        if st == _WIDE:
            scale /= 2.0
        step += 1
    plan.append((remaining[0], "final", scale))
    return plan, choices


def _materialize_plan(
    plan: list[tuple[int, str, float]], max_factors: int
) -> list[Factor]:
    last_term, _, last_scale = plan[-1]
    factors = [Factor(last_term, last_scale)]
    for t, st, scale in reversed(plan[:-1]):
        if st == _SHALLOW:
            half = Factor(t, scale / 2)
            factors = [half] + factors + [half]
        else:
            _check_cap(2 * len(factors) + 1, max_factors)
            factors = factors + [Factor(t, scale)] + factors
    return factors


def hybrid_sequence(
    h: Hamiltonian, dt: float, *, max_factors: int = DEFAULT_MAX_FACTORS
) -> SuzukiSequence:
    """Greedy sequence choosing term and placement jointly at every peel.

    At each peel every (remaining term, shallow-or-wide) pair is scored
    with :func:`local_step_bound` at the current scale and the minimum
    wins; ties prefer shallow, then the lowest term index.  The greedy
    decisions are recorded on the result as ``choices``.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    _check_cap(2 * h.term_count - 1, max_factors)
    plan, choices = _greedy_plan(h, dt, None)
    factors = _materialize_plan(plan, max_factors)
    wide_steps = sum(1 for c in choices if c.step_type == _WIDE)
    return SuzukiSequence(
        h.term_count,
        Strategy.hybrid(),
        tuple(factors),
        wide_steps=wide_steps,
        choices=tuple(choices),
    )


def _wide_budget(fraction: float, peels: int) -> int:
    # Round half up so fraction * peels lands on a definite integer.
    return int(math.floor(fraction * peels + 0.5))


def fractional_sequence(
    h: Hamiltonian,
    dt: float,
    fraction: float,
    *,
    max_factors: int = DEFAULT_MAX_FACTORS,
) -> SuzukiSequence:
    """Greedy sequence with a fixed budget of wide peels before shallow ones.

    Of the m - 1 peels, the first ``round(fraction * (m - 1))`` are wide
    and the rest shallow; at each peel the term with the smallest
    :func:`local_step_bound` for the forced placement is chosen (ties
    to the lowest index).  ``fraction=0`` recovers shallow structure and
    ``fraction=1`` wide structure, up to term order.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
    m = h.term_count
    if m < 2:
        raise ValueError("fractional sequences need at least two terms")
    peels = m - 1
    n_wide = _wide_budget(fraction, peels)
    _check_cap(predicted_length(m, Strategy.fractional(fraction)), max_factors)
    forced = [_WIDE] * n_wide + [_SHALLOW] * (peels - n_wide)
    plan, choices = _greedy_plan(h, dt, forced)
    factors = _materialize_plan(plan, max_factors)
    return SuzukiSequence(
        m,
        Strategy.fractional(fraction),
        tuple(factors),
        wide_steps=n_wide,
        choices=tuple(choices),
    )


def suzuki_weight(k: int) -> float:
    """Suzuki splitting weight ``p_k = 1 / (4 - 4**(1/(2k-1)))``."""
    if k < 2:
        raise ValueError(f"the Suzuki recursion starts at k=2, got {k}")
    return 1.0 / (4.0 - 4.0 ** (1.0 / (2 * k - 1)))


def compose_higher_order(
    base: SuzukiSequence, k: int, *, max_factors: int = DEFAULT_MAX_FACTORS
) -> SuzukiSequence:
    """Lift a second-order sequence to order 2k via the Suzuki recursion.

    Each level j = 2..k applies ``S_{2j}(dt) = S_{2j-2}(p_j dt)**2
    S_{2j-2}((1 - 4 p_j) dt) S_{2j-2}(p_j dt)**2``, multiplying the
    length by 5, so the result has ``5**(k-1)`` times the base length.
    Adjacent same-term factors at block boundaries are left unmerged.
    The middle block's coefficients are negative, which is expected.
    """
    if k < 2:
        raise ValueError(f"the Suzuki recursion starts at k=2, got {k}")
    factors = list(base.factors)
    for j in range(2, k + 1):
        _check_cap(5 * len(factors), max_factors)
        p = suzuki_weight(j)
        outer = [Factor(f.term_index, p * f.coefficient) for f in factors]
        middle = [Factor(f.term_index, (1.0 - 4.0 * p) * f.coefficient) for f in factors]
        factors = outer + outer + middle + outer + outer
    return SuzukiSequence(
        base.term_count,
        Strategy.higher_order(k),
        tuple(factors),
        wide_steps=base.wide_steps,
        choices=base.choices,
    )


def predicted_length(term_count: int, strategy: Strategy) -> int:
    """Sequence length from the construction rules alone.

    Supported for shallow, wide, and fractional strategies; hybrid and
    higher-order lengths depend on the constructed sequence, so asking
    for them raises ``ValueError``.
    """
    m = term_count
    if m < 1:
        raise ValueError(f"term count must be positive, got {m}")
    if strategy.kind == "shallow":
        return 2 * m - 1
    if strategy.kind == "wide":
        return 2**m - 1
    if strategy.kind == "fractional":
        n_wide = _wide_budget(strategy.fraction, m - 1)
        length = 2 * (m - n_wide) - 1
        for _ in range(n_wide):
            length = 2 * length + 1
        return length
    raise ValueError(
        f"length of a {strategy.kind} sequence depends on its construction"
    )


def sequence_to_text(seq: SuzukiSequence) -> str:
    """Serialise to the plain-text format.

    Line 1 is ``m=<terms> strategy=<label>``; each further line is
    ``<term_index> <coefficient>`` with the coefficient printed via
    ``repr`` so parsing reproduces the exact float.
    """
    lines = [f"m={seq.term_count} strategy={seq.strategy.label()}"]
    for f in seq.factors:
        lines.append(f"{f.term_index} {f.coefficient!r}")
    return "\n".join(lines) + "\n"


def sequence_from_text(text: str) -> SuzukiSequence:
    """Parse the format written by :func:`sequence_to_text`."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty sequence text")
    header = lines[0].split()
    if (
        len(header) != 2
        or not header[0].startswith("m=")
        or not header[1].startswith("strategy=")
    ):
        raise ValueError(f"expected 'm=<terms> strategy=<label>' header, got {lines[0]!r}")
    try:
        m = int(header[0].removeprefix("m="))
    except ValueError as exc:
        raise ValueError(f"bad term count in header {lines[0]!r}") from exc
    strategy = Strategy.parse(header[1].removeprefix("strategy="))
    factors = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"expected '<term_index> <coefficient>', got {line!r}")
        factors.append(Factor(int(parts[0]), float(parts[1])))
    return SuzukiSequence(m, strategy, tuple(factors))
