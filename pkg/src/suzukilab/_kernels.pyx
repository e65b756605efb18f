# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels.

Mirrors :mod:`suzukilab._kernels_py` operation for operation; that
module is the semantic reference.  Matrix products go through BLAS
``zgemm`` directly, with the row-major/column-major mismatch handled by
swapping operand order (``C = A @ B`` row-major is ``C^T = B^T A^T``
column-major).
"""

import numpy as np

from libc.string cimport memcpy
from scipy.linalg.cython_blas cimport zgemm

ctypedef double complex zc

cdef char* _N = b'N'
cdef char* _C = b'C'

BACKEND_NAME = "compiled"


cdef void _gemm_nn(zc* a, zc* b, zc* c, int d) noexcept nogil:
    # c = a @ b for row-major square buffers.
    cdef zc one = 1.0
    cdef zc zero = 0.0
    zgemm(_N, _N, &d, &d, &d, &one, b, &d, a, &d, &zero, c, &d)


cdef void _gemm_nh(zc* a, zc* b, zc* c, int d) noexcept nogil:
    # c = a @ b^H for row-major square buffers: column-major
    # c^T = conj(b) a^T, and conj(b) is op('C') of b's column-major view.
    cdef zc one = 1.0
    cdef zc zero = 0.0
    zgemm(_C, _N, &d, &d, &d, &one, b, &d, a, &d, &zero, c, &d)


def chain_product(factors_in):
    """Product ``F[n-1] @ ... @ F[0]`` of a stack of matrices."""
    cdef const zc[:, :, ::1] factors = np.ascontiguousarray(factors_in, dtype=np.complex128)
    cdef int n = <int> factors.shape[0]
    cdef int d = <int> factors.shape[1]
    a = np.eye(d, dtype=np.complex128)
    b = np.empty((d, d), dtype=np.complex128)
    cdef zc[:, ::1] av = a
    cdef zc[:, ::1] bv = b
    cdef zc* cur = &av[0, 0]
    cdef zc* tmp = &bv[0, 0]
    cdef zc* swap
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _gemm_nn(<zc*> &factors[i, 0, 0], cur, tmp, d)
            swap = cur
            cur = tmp
            tmp = swap
    return a if n % 2 == 0 else b


def unitary_trajectory(u_in, rho0_in, Py_ssize_t steps):
    """Stack of ``steps`` density matrices under repeated ``rho -> u rho u^H``."""
    cdef const zc[:, ::1] u = np.ascontiguousarray(u_in, dtype=np.complex128)
    cdef int d = <int> u.shape[0]
    out = np.empty((steps, d, d), dtype=np.complex128)
    cdef zc[:, :, ::1] outv = out
    rho_arr = np.array(rho0_in, dtype=np.complex128, order="C")
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    cdef zc[:, ::1] rho = rho_arr
    cdef zc[:, ::1] tmp = tmp_arr
    cdef zc* prho = &rho[0, 0]
    cdef zc* ptmp = &tmp[0, 0]
    cdef Py_ssize_t k
    with nogil:
        for k in range(steps):
            _gemm_nn(<zc*> &u[0, 0], prho, ptmp, d)
            _gemm_nh(ptmp, <zc*> &u[0, 0], &outv[k, 0, 0], d)
            prho = &outv[k, 0, 0]
    return out


def noisy_trajectory(factors_in, rho0_in, Py_ssize_t steps, double p):
    """Trajectory where every factor unitary is followed by depolarizing noise."""
    cdef const zc[:, :, ::1] factors = np.ascontiguousarray(factors_in, dtype=np.complex128)
    cdef int n = <int> factors.shape[0]
    cdef int d = <int> factors.shape[1]
    out = np.empty((steps, d, d), dtype=np.complex128)
    cdef zc[:, :, ::1] outv = out
    a_arr = np.array(rho0_in, dtype=np.complex128, order="C")
    b_arr = np.empty((d, d), dtype=np.complex128)
    c_arr = np.empty((d, d), dtype=np.complex128)
    cdef zc[:, ::1] av = a_arr
    cdef zc[:, ::1] bv = b_arr
    cdef zc[:, ::1] cv = c_arr
    cdef zc* prho = &av[0, 0]
    cdef zc* pt1 = &bv[0, 0]
    cdef zc* pt2 = &cv[0, 0]
    cdef zc* swap
    cdef double keep = 1.0 - p
    cdef double mix = p / d
    cdef Py_ssize_t k, i, j
    with nogil:
        for k in range(steps):
            for i in range(n):
                _gemm_nn(<zc*> &factors[i, 0, 0], prho, pt1, d)
                _gemm_nh(pt1, <zc*> &factors[i, 0, 0], pt2, d)
                if p != 0.0:
                    for j in range(d * d):
                        pt2[j] = pt2[j] * keep
                    for j in range(d):
                        pt2[j * d + j] = pt2[j * d + j] + mix
                swap = prho
                prho = pt2
                pt2 = swap
            memcpy(&outv[k, 0, 0], prho, <size_t> d * d * sizeof(zc))
    return out
