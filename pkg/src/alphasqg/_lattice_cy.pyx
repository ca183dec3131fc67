# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the truncated lattice sums.

Mirrors _lattice_py.direct_sums: six raw accumulators over the integer
images j = 1..N in both horizontal directions (see that module for the
definitions).  The `mask` argument selects which accumulators to fill, in
the fixed order u0, u1, u2, u11, u12, u22.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow, sqrt

cnp.import_array()


cdef inline double _powneg(double s, double a2, int mode) nogil:
    # s ** (-a2); hardware sqrt chains for the dyadic exponents that occur
    # in the standard scenarios (alpha = 0.5 and alpha = 1.0)
    if mode == 1:
        return 1.0 / sqrt(sqrt(s))
    if mode == 2:
        return 1.0 / sqrt(s)
    return pow(s, -a2)


def direct_sums(double[::1] x1, double[::1] x2, double alpha, int N,
                unsigned char[::1] mask):
    cdef Py_ssize_t n = x1.shape[0]
    cdef cnp.ndarray[double, ndim=2] out_arr = np.zeros((6, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i
    cdef int j
    cdef double a2 = 0.5 * alpha
    cdef double tpa, d, s, sa, s1, s2, x2sq
    cdef bint w0 = mask[0], w1 = mask[1], w2 = mask[2]
    cdef bint w11 = mask[3], w12 = mask[4], w22 = mask[5]
    cdef bint need1 = w1 or w2
    cdef bint need2 = w11 or w12 or w22
    cdef double acc0, acc1, acc2, acc11, acc12, acc22
    cdef int sgn
    cdef int mode = 0
    if a2 == 0.25:
        mode = 1
    elif a2 == 0.5:
        mode = 2

    for i in range(n):
        x2sq = x2[i] * x2[i]
        acc0 = acc1 = acc2 = acc11 = acc12 = acc22 = 0.0
        for j in range(1, N + 1):
            tpa = pow(<double> j, -alpha) if w0 else 0.0
            for sgn in range(2):
                d = x1[i] - j if sgn == 0 else x1[i] + j
                s = x2sq + d * d
                sa = _powneg(s, a2, mode)
                if w0:
                    acc0 += sa - tpa
                if need1 or need2:
                    s1 = sa / s
                    if w1:
                        acc1 += d * s1
                    if w2:
                        acc2 += s1
                    if need2:
                        s2 = s1 / s
                        if w11:
                            acc11 += d * d * s2
                        if w12:
                            acc12 += d * s2
                        if w22:
                            acc22 += s2
        out[0, i] = acc0
        out[1, i] = acc1
        out[2, i] = acc2
        out[3, i] = acc11
        out[4, i] = acc12
        out[5, i] = acc22
    return out_arr
