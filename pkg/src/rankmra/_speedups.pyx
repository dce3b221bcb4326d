# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the transform hot kernels.

API mirrors `_kernels_py`; `_accel` prefers this module when importable.
"""

import numpy as np


cdef inline long _lehmer_rank(long* w, Py_ssize_t k, long* fact) nogil:
    cdef Py_ssize_t i, l
    cdef long rank = 0, c
    for i in range(k - 1):
        c = 0
        for l in range(i + 1, k):
            if w[l] < w[i]:
                c += 1
        rank += c * fact[k - 1 - i]
    return rank


cdef void _fill_factorials(long* fact, Py_ssize_t k) nogil:
    cdef Py_ssize_t i
    fact[0] = 1
    for i in range(1, k + 1):
        fact[i] = fact[i - 1] * i


def rank_rows(long[:, ::1] words):
    """Lexicographic ranks of permutation-like rows (comparison based)."""
    cdef Py_ssize_t m = words.shape[0], k = words.shape[1]
    out = np.zeros(m, dtype=np.int64)
    cdef long[::1] o = out
    cdef long fact[32]
    cdef long buf[32]
    cdef Py_ssize_t r, i
    if k == 0:
        return out
    _fill_factorials(fact, k)
    with nogil:
        for r in range(m):
            for i in range(k):
                buf[i] = words[r, i]
            o[r] = _lehmer_rank(buf, k, fact)
    return out


def scatter_rowwise(double[::1] out, double[::1] row,
                    long[:, ::1] pinv, long[:, ::1] pwords,
                    long[::1] src_ranks, double[::1] src_vals):
    """Accumulate alpha-filter columns for each nonzero source coefficient."""
    cdef Py_ssize_t m = pinv.shape[0], k = pinv.shape[1]
    cdef Py_ssize_t ns = src_ranks.shape[0]
    cdef long fact[32]
    cdef long v[32]
    cdef long buf[32]
    cdef Py_ssize_t s, t, i
    cdef long r
    cdef double val
    _fill_factorials(fact, k)
    with nogil:
        for s in range(ns):
            r = src_ranks[s]
            val = src_vals[s]
            for i in range(k):
                v[i] = pwords[r, i]
            for t in range(m):
                for i in range(k):
                    buf[i] = pinv[t, v[i]]
                out[t] += val * row[_lehmer_rank(buf, k, fact)]


def window_accumulate(double[::1] out, long[:, ::1] pwords,
                      Py_ssize_t i, Py_ssize_t j,
                      long[::1] slot_by_mask, double[:, ::1] vals,
                      double weight):
    """Add the contribution of the contiguous window [i, j] to every word."""
    cdef Py_ssize_t m = pwords.shape[0]
    cdef Py_ssize_t L = j - i + 1
    cdef long fact[32]
    cdef long buf[32]
    cdef Py_ssize_t r, q
    cdef long mask
    _fill_factorials(fact, L)
    with nogil:
        for r in range(m):
            mask = 0
            for q in range(L):
                buf[q] = pwords[r, i + q]
                mask |= (<long>1) << buf[q]
            out[r] += weight * vals[slot_by_mask[mask], _lehmer_rank(buf, L, fact)]
