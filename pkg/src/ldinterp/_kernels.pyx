# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""

from libc.math cimport fabs
from libc.stdlib cimport free, malloc
from scipy.linalg.cython_blas cimport dgemm

import numpy as np

NAME = "compiled"

# target size (in doubles) of one block of kernel values; keeps it in L2
DEF BLOCK_DOUBLES = 131072


def clenshaw2d(const double[:, ::1] c, const double[::1] x, const double[::1] y):
    """Values of ``sum_ij c[i, j] T_i(x_k) T_j(y_k)`` for each point ``k``."""
    cdef Py_ssize_t rows = c.shape[0], cols = c.shape[1], npts = x.shape[0]
    cdef Py_ssize_t k, i, j
    cdef double xk, yk, b0, b1, b2
    if y.shape[0] != npts:
        raise ValueError("x and y must have equal length")
    out = np.empty(npts)
    cdef double[::1] res = out
    cdef double *inner = <double *> malloc(rows * sizeof(double))
    if inner == NULL:
        raise MemoryError()
    with nogil:
        for k in range(npts):
            xk = x[k]
            yk = y[k]
            for i in range(rows):
                b1 = 0.0
                b2 = 0.0
                for j in range(cols - 1, 0, -1):
                    b0 = c[i, j] + 2.0 * yk * b1 - b2
                    b2 = b1
                    b1 = b0
                inner[i] = c[i, 0] + yk * b1 - b2
            b1 = 0.0
            b2 = 0.0
            for i in range(rows - 1, 0, -1):
                b0 = inner[i] + 2.0 * xk * b1 - b2
                b2 = b1
                b1 = b0
            res[k] = inner[0] + xk * b1 - b2
    free(inner)
    return out


cdef inline double _weighted_abs_sum(const double *x, const double *w, Py_ssize_t count) noexcept nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t a
    for a in range(count):
        acc += w[a] * fabs(x[a])
    return acc


def lebesgue_tensor(const double[:, :, ::1] S, const double[:, ::1] Q,
                    const double[::1] W, double[:, ::1] out, Py_ssize_t nb):
    """Accumulate weighted absolute kernel sums into ``out``.

    ``out[u, v] += sum_{b, a} W[b * na + a] * |sum_j Q[v * nb + b, j] * S[u, j, a]|``

    Each block of kernel values is produced by one dgemm call and reduced
    while it is still resident in cache.
    """
    cdef Py_ssize_t n_u = S.shape[0], jdim = S.shape[1], na = S.shape[2]
    cdef Py_ssize_t n_v = out.shape[1]
    cdef Py_ssize_t u, v0, v1, r, a, b, vb
    cdef double acc
    cdef int m, n, k, lda, ldb, ldc
    cdef double one = 1.0, zero = 0.0
    cdef char trans = b'N'
    if Q.shape[0] != n_v * nb or Q.shape[1] != jdim or W.shape[0] != nb * na:
        raise ValueError("inconsistent kernel operand shapes")
    if out.shape[0] != n_u:
        raise ValueError("out has the wrong number of rows")
    if n_u == 0 or n_v == 0 or nb == 0 or na == 0:
        return out
    vb = BLOCK_DOUBLES // (nb * na)
    if vb < 1:
        vb = 1
    if vb > n_v:
        vb = n_v
    cdef double *buf = <double *> malloc(vb * nb * na * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    m = <int> na
    k = <int> jdim
    lda = <int> na
    ldb = <int> jdim
    ldc = <int> na
    with nogil:
        for u in range(n_u):
            v0 = 0
            while v0 < n_v:
                v1 = v0 + vb
                if v1 > n_v:
                    v1 = n_v
                n = <int> ((v1 - v0) * nb)
                # row-major block = Q[v0*nb:v1*nb] @ S[u], issued as its column-major transpose
                dgemm(&trans, &trans, &m, &n, &k, &one,
                      <double *> &S[u, 0, 0], &lda,
                      <double *> &Q[v0 * nb, 0], &ldb,
                      &zero, buf, &ldc)
                for r in range(v1 - v0):
                    acc = 0.0
                    for b in range(nb):
                        acc = acc + _weighted_abs_sum(buf + (r * nb + b) * na, &W[b * na], na)
                    out[u, v0 + r] += acc
                v0 = v1
    free(buf)
    return out
