"""Build script for the optional compiled kernels.

The package is pure Python except for ``suzukilab._kernels``, a Cython
extension wrapping BLAS matrix products for the simulation hot loops.
The extension is marked optional: if it fails to compile, installation
still succeeds and the package falls back to the NumPy implementation
in ``suzukilab._kernels_py`` at import time.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "suzukilab._kernels",
                sources=["src/suzukilab/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=extensions)
