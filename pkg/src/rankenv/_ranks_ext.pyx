# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pointwise ranking kernels.

Same contracts as ``rankenv._ranks_np``: integer ranks are bit-identical,
continuous ranks agree up to the last ulp of exp().
"""

from libc.math cimport exp
from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.vector cimport vector

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double _REL_EPS = 1e-12
cdef double _MAX_EXP_RATIO = 700.0


def two_sided_ranks(values):
    """Two-sided pointwise competition ranks (int32), smaller = more extreme."""
    cdef double[:, ::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t s = v.shape[0]
    cdef Py_ssize_t d = v.shape[1]
    out_arr = np.empty((s, d), dtype=np.int32)
    cdef int[:, ::1] out = out_arr
    cdef vector[pair[double, int]] col
    cdef Py_ssize_t i, k, a, b
    cdef int r_low, r_high, r
    col.resize(s)
    with nogil:
        for k in range(d):
            for i in range(s):
                col[i] = pair[double, int](v[i, k], <int> i)
            sort(col.begin(), col.end())
            a = 0
            while a < s:
                b = a + 1
                while b < s and col[b].first == col[a].first:
                    b += 1
                r_low = <int> (a + 1)
                r_high = <int> (s - b + 1)
                r = r_low if r_low < r_high else r_high
                for i in range(a, b):
                    out[col[i].second, k] = r
                a = b
    return out_arr


def cont_ranks(values):
    """Continuous two-sided pointwise ranks (float64), smaller = more extreme."""
    cdef double[:, ::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t s = v.shape[0]
    cdef Py_ssize_t d = v.shape[1]
    out_arr = np.empty((s, d), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef vector[pair[double, int]] col
    cdef Py_ssize_t i, k
    cdef double lo
    col.resize(s)
    with nogil:
        for k in range(d):
            # score from below
            for i in range(s):
                col[i] = pair[double, int](v[i, k], <int> i)
            sort(col.begin(), col.end())
            _lower_scores(col, out, k, s)
            # score from above: same pass on the negated column, keep the min
            for i in range(s):
                col[i] = pair[double, int](-v[i, k], <int> i)
            sort(col.begin(), col.end())
            for i in range(s):
                lo = _lower_score_at(col, i, s)
                if lo < out[col[i].second, k]:
                    out[col[i].second, k] = lo
    return out_arr


cdef void _lower_scores(vector[pair[double, int]] & col, double[:, ::1] out,
                        Py_ssize_t k, Py_ssize_t s) noexcept nogil:
    cdef Py_ssize_t p
    for p in range(s):
        out[col[p].second, k] = _lower_score_at(col, p, s)


cdef double _lower_score_at(vector[pair[double, int]] & col, Py_ssize_t p,
                            Py_ssize_t s) noexcept nogil:
    cdef double eps = _REL_EPS * (col[s - 1].first - col[0].first)
    cdef double num, den, ratio
    if p == s - 1:
        return <double> s
    if p == 0:
        den = col[s - 1].first - col[1].first
        if den > eps:
            ratio = (col[1].first - col[0].first) / den
            if ratio > _MAX_EXP_RATIO:
                ratio = _MAX_EXP_RATIO
            return exp(-ratio)
        return 0.5
    num = col[p].first - col[p - 1].first
    den = col[p + 1].first - col[p - 1].first
    if den > eps:
        return <double> p + num / den
    return <double> p + 0.5
