"""Compare the compiled kernels against the NumPy reference.

Times the three hot kernels on workloads shaped like the default
experiments: a long factor chain collapsed to one step unitary, a
noiseless 500-step trajectory, and a noisy factor-by-factor trajectory.

Usage::

    python3 benchmarks/bench_backends.py [--qubits 5] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from suzukilab import _kernels_py, build_tfim, wide_sequence
from suzukilab.simulate import _factor_stack, initial_all_zero

try:
    from suzukilab import _kernels as _compiled
except ImportError:
    _compiled = None


def _best_of(repeats: int, fn, *args) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, default=5, help="chain length L")
    parser.add_argument("--steps", type=int, default=500, help="trajectory steps")
    parser.add_argument("--repeats", type=int, default=5, help="best-of repeats")
    args = parser.parse_args()

    h = build_tfim(args.qubits, 1.0, 5.0)
    seq = wide_sequence(h)
    stack = _factor_stack(h, seq, 0.01)
    rho0 = initial_all_zero(args.qubits).data
    u = _kernels_py.chain_product(stack)

    workloads = [
        ("chain_product", lambda impl: impl.chain_product(stack)),
        (
            "unitary_trajectory",
            lambda impl: impl.unitary_trajectory(u, rho0, args.steps),
        ),
        (
            "noisy_trajectory",
            lambda impl: impl.noisy_trajectory(stack, rho0, args.steps, 1e-6),
        ),
    ]

    print(
        f"L={args.qubits} (dim {2**args.qubits}), {len(seq)} factors, "
        f"{args.steps} steps, best of {args.repeats}"
    )
    header = f"{'kernel':<20} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, run in workloads:
        py = _best_of(args.repeats, run, _kernels_py)
        if _compiled is None:
            print(f"{name:<20} {py * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>9}")
            continue
        cy = _best_of(args.repeats, run, _compiled)
        out_py, out_cy = run(_kernels_py), run(_compiled)
        match = "bitwise" if np.array_equal(out_py, out_cy) else "DIFFERS"
        print(
            f"{name:<20} {py * 1e3:>10.2f}ms {cy * 1e3:>10.2f}ms "
            f"{py / cy:>8.1f}x  ({match})"
        )
    if _compiled is None:
        print("compiled extension not built; showing the reference only")


if __name__ == "__main__":
    main()
