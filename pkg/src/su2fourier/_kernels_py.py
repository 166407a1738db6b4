"""Numpy implementations of the fused Chebyshev-sweep kernels.

These are the portable fallbacks for the compiled extension in _kernels.pyx;
both expose the same four functions and must stay numerically interchangeable
(same recurrence, summation reassociation only).  U_n denotes the Chebyshev
polynomial of the second kind, evaluated by the three-term recurrence
U_0 = 1, U_1 = 2c, U_n = 2c U_{n-1} - U_{n-2}.
"""

import numpy as np

BACKEND = "python"

_CHUNK = 1 << 16


def chebu_design(c, nmax):
    """Matrix U[n, i] = U_n(c[i]) for n = 0..nmax."""
    c = np.ascontiguousarray(c, dtype=float)
    out = np.empty((nmax + 1, c.size))
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * c
    for n in range(2, nmax + 1):
        np.multiply(2.0 * c, out[n - 1], out=out[n])
        out[n] -= out[n - 2]
    return out


def chebu_weighted_sums(c, w, nmax):
    """Vector r[n] = sum_i w[i] * U_n(c[i]) for n = 0..nmax."""
    c = np.ascontiguousarray(c, dtype=float)
    w = np.ascontiguousarray(w, dtype=float)
    out = np.empty(nmax + 1)
    um2 = np.ones_like(c)
    out[0] = w.sum()
    if nmax == 0:
        return out
    c2 = 2.0 * c
    um1 = c2.copy()
    out[1] = um1 @ w
    for n in range(2, nmax + 1):
        um2, um1 = um1, c2 * um1 - um2
        out[n] = um1 @ w
    return out


def chebu_segment_sums(c2d, w, nmax):
    """P[n, s] = sum_j w[j] * U_n(c2d[s, j]) for each row s."""
    c2d = np.ascontiguousarray(c2d, dtype=float)
    w = np.ascontiguousarray(w, dtype=float)
    nseg = c2d.shape[0]
    out = np.empty((nmax + 1, nseg))
    block = max(1, _CHUNK // max(1, c2d.shape[1]))
    for s0 in range(0, nseg, block):
        s1 = min(nseg, s0 + block)
        c = c2d[s0:s1]
        c2 = 2.0 * c
        um2 = np.ones_like(c)
        out[0, s0:s1] = um2 @ w
        if nmax >= 1:
            um1 = c2.copy()
            out[1, s0:s1] = um1 @ w
        for n in range(2, nmax + 1):
            um2, um1 = um1, c2 * um1 - um2
            out[n, s0:s1] = um1 @ w
    return out


def weighted_design_product(c, w, table, nmax):
    """S[n, r] = sum_i w[i] * U_n(c[i]) * table[r, i] (fused design-matrix product)."""
    c = np.ascontiguousarray(c, dtype=float)
    w = np.ascontiguousarray(w, dtype=float)
    table = np.ascontiguousarray(table, dtype=float)
    out = np.zeros((nmax + 1, table.shape[0]))
    for i0 in range(0, c.size, _CHUNK):
        i1 = min(c.size, i0 + _CHUNK)
        u = chebu_design(c[i0:i1], nmax)
        u *= w[i0:i1]
        out += u @ table[:, i0:i1].T
    return out
