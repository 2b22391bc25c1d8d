# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled phase-sum kernel: fused loops, no phase-matrix temporaries.

Accumulation switches to Kahan compensation once the state count reaches
KAHAN_THRESHOLD, keeping long sums accurate at large lattice sizes.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

KAHAN_THRESHOLD = 10000

DEF MAX_COLUMNS = 8


def weighted_phase_sums(k, dists, weights):
    """out[d, m] = sum_j exp(i * k[j] * dists[d]) * weights[j, m].

    Same contract as spinpair._core_py.weighted_phase_sums; at most
    MAX_COLUMNS weight columns per call.
    """
    cdef double[::1] kv = np.ascontiguousarray(k, dtype=np.float64)
    cdef double[::1] dv = np.ascontiguousarray(dists, dtype=np.float64)
    cdef double complex[:, ::1] wv = np.ascontiguousarray(weights, dtype=np.complex128)

    cdef Py_ssize_t ns = kv.shape[0], nd = dv.shape[0], nw = wv.shape[1]
    if wv.shape[0] != ns:
        raise ValueError("weights must have one row per state")
    if nw > MAX_COLUMNS:
        raise ValueError(f"at most {MAX_COLUMNS} weight columns supported")

    out = np.empty((nd, nw), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef bint kahan = ns >= KAHAN_THRESHOLD

    cdef Py_ssize_t d, j, m
    cdef double ph, c, s
    cdef double complex term
    cdef double ar[MAX_COLUMNS]
    cdef double ai[MAX_COLUMNS]
    cdef double cr[MAX_COLUMNS]
    cdef double ci[MAX_COLUMNS]
    cdef double y, t

    with nogil:
        for d in range(nd):
            for m in range(nw):
                ar[m] = 0.0
                ai[m] = 0.0
                cr[m] = 0.0
                ci[m] = 0.0
            for j in range(ns):
                ph = kv[j] * dv[d]
                c = cos(ph)
                s = sin(ph)
                for m in range(nw):
                    term = (c + 1j * s) * wv[j, m]
                    if kahan:
                        y = term.real - cr[m]
                        t = ar[m] + y
                        cr[m] = (t - ar[m]) - y
                        ar[m] = t
                        y = term.imag - ci[m]
                        t = ai[m] + y
                        ci[m] = (t - ai[m]) - y
                        ai[m] = t
                    else:
                        ar[m] += term.real
                        ai[m] += term.imag
            for m in range(nw):
                ov[d, m] = ar[m] + 1j * ai[m]
    return out
