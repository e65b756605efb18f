"""Backend selection for the simulation kernels.

At import time this module picks the compiled Cython kernels when they
are importable and falls back to the NumPy reference implementation
otherwise.  Setting the environment variable ``SUZUKILAB_PURE_PYTHON=1``
forces the fallback, which is handy for benchmarking and debugging.
"""

from __future__ import annotations

import os

from suzukilab import _kernels_py

_impl = _kernels_py
if os.environ.get("SUZUKILAB_PURE_PYTHON", "") != "1":
    try:
        from suzukilab import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled

chain_product = _impl.chain_product
unitary_trajectory = _impl.unitary_trajectory
noisy_trajectory = _impl.noisy_trajectory


def backend_name() -> str:
    """Name of the active kernel backend: ``"compiled"`` or ``"python"``."""
    return _impl.BACKEND_NAME
