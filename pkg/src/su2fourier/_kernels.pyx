# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled fused kernels for the Chebyshev quadrature sweeps.

Mirror of _kernels_py (same contracts, same recurrence); the win is fusing the
U_n recurrence with the weighted reductions so no (nmax+1, M) temporaries hit
memory.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def chebu_design(c, int nmax):
    """Matrix U[n, i] = U_n(c[i]) for n = 0..nmax."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cc = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t m = cc.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nmax + 1, m))
    cdef Py_ssize_t i, n
    cdef double c2
    for i in range(m):
        c2 = 2.0 * cc[i]
        out[0, i] = 1.0
        if nmax >= 1:
            out[1, i] = c2
        for n in range(2, nmax + 1):
            out[n, i] = c2 * out[n - 1, i] - out[n - 2, i]
    return out


def chebu_weighted_sums(c, w, int nmax):
    """Vector r[n] = sum_i w[i] * U_n(c[i]) for n = 0..nmax."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cc = np.ascontiguousarray(c, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ww = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t m = cc.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(nmax + 1)
    cdef Py_ssize_t i, n
    cdef double c2, um2, um1, u, wi
    for i in range(m):
        wi = ww[i]
        c2 = 2.0 * cc[i]
        um2 = 1.0
        out[0] += wi
        if nmax >= 1:
            um1 = c2
            out[1] += wi * um1
            for n in range(2, nmax + 1):
                u = c2 * um1 - um2
                um2 = um1
                um1 = u
                out[n] += wi * u
    return out


def chebu_segment_sums(c2d, w, int nmax):
    """P[n, s] = sum_j w[j] * U_n(c2d[s, j]) for each row s."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] cc = np.ascontiguousarray(c2d, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ww = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t nseg = cc.shape[0], m = cc.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((nmax + 1, nseg))
    cdef Py_ssize_t s, j, n
    cdef double c2, um2, um1, u, wj
    for s in range(nseg):
        for j in range(m):
            wj = ww[j]
            c2 = 2.0 * cc[s, j]
            um2 = 1.0
            out[0, s] += wj
            if nmax >= 1:
                um1 = c2
                out[1, s] += wj * um1
                for n in range(2, nmax + 1):
                    u = c2 * um1 - um2
                    um2 = um1
                    um1 = u
                    out[n, s] += wj * u
    return out


def weighted_design_product(c, w, table, int nmax):
    """S[n, r] = sum_i w[i] * U_n(c[i]) * table[r, i]."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cc = np.ascontiguousarray(c, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ww = np.ascontiguousarray(w, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] tt = np.ascontiguousarray(table, dtype=np.float64)
    cdef Py_ssize_t m = cc.shape[0], nrow = tt.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((nmax + 1, nrow))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] u = np.empty(nmax + 1)
    cdef Py_ssize_t i, n, r
    cdef double c2, wi, tri
    for i in range(m):
        wi = ww[i]
        c2 = 2.0 * cc[i]
        u[0] = wi
        if nmax >= 1:
            u[1] = wi * c2
            for n in range(2, nmax + 1):
                u[n] = c2 * u[n - 1] - u[n - 2]
        for r in range(nrow):
            tri = tt[r, i]
            for n in range(nmax + 1):
                out[n, r] += u[n] * tri
    return out
