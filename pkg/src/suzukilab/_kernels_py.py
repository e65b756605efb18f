"""NumPy reference implementation of the simulation kernels.

``suzukilab.backend`` re-exports these when the compiled extension is
unavailable (or disabled via ``SUZUKILAB_PURE_PYTHON=1``).  Semantics
here are the contract; the Cython module mirrors them operation for
operation.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def chain_product(factors: np.ndarray) -> np.ndarray:
    """Product ``F[n-1] @ ... @ F[1] @ F[0]`` of a stack of matrices.

    The first matrix in the stack is the first applied to a state, so
    it sits rightmost in the product.
    """
    factors = np.ascontiguousarray(factors, dtype=np.complex128)
    n, d, _ = factors.shape
    out = np.eye(d, dtype=np.complex128)
    for i in range(n):
        out = factors[i] @ out
    return out


def unitary_trajectory(u: np.ndarray, rho0: np.ndarray, steps: int) -> np.ndarray:
    """Stack of ``steps`` density matrices under repeated ``rho -> u rho u^H``."""
    u = np.ascontiguousarray(u, dtype=np.complex128)
    d = u.shape[0]
    out = np.empty((steps, d, d), dtype=np.complex128)
    rho = np.array(rho0, dtype=np.complex128)
    uh = u.conj().T
    for k in range(steps):
        rho = u @ rho @ uh
        out[k] = rho
    return out


def noisy_trajectory(
    factors: np.ndarray, rho0: np.ndarray, steps: int, p: float
) -> np.ndarray:
    """Trajectory where every factor unitary is followed by depolarizing noise.

    One step applies, for each factor F in order,
    ``rho -> (1 - p) F rho F^H + p I / d``.
    """
    factors = np.ascontiguousarray(factors, dtype=np.complex128)
    n, d, _ = factors.shape
    out = np.empty((steps, d, d), dtype=np.complex128)
    rho = np.array(rho0, dtype=np.complex128)
    mix = p / d
    adjoints = np.conj(np.transpose(factors, (0, 2, 1))).copy()
    for k in range(steps):
        for i in range(n):
            rho = factors[i] @ rho @ adjoints[i]
            if p != 0.0:
                rho *= 1.0 - p
                rho.flat[:: d + 1] += mix
        out[k] = rho
    return out
