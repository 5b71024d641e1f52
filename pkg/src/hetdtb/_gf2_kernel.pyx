# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) row reduction on bit-packed uint64 matrices.

Column ``c`` lives in word ``c // 64`` at bit ``c % 64``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()


def rref(uint64_t[:, ::1] M, Py_ssize_t ncols):
    """Reduce ``M`` in place to reduced row echelon form.

    Returns the pivot column of each of the first ``rank`` rows.
    """
    cdef Py_ssize_t nrows = M.shape[0], nwords = M.shape[1]
    cdef Py_ssize_t rank = 0, col, r, w, piv, word
    cdef uint64_t bit, tmp
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    cdef int64_t[::1] pv = pivots
    for col in range(ncols):
        if rank == nrows:
            break
        word = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        piv = -1
        for r in range(rank, nrows):
            if M[r, word] & bit:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for w in range(nwords):
                tmp = M[piv, w]
                M[piv, w] = M[rank, w]
                M[rank, w] = tmp
        for r in range(nrows):
            if r != rank and (M[r, word] & bit):
                for w in range(word, nwords):
                    M[r, w] ^= M[rank, w]
        pv[rank] = col
        rank += 1
    return pivots[:rank].copy()


def reduce_rows(uint64_t[:, ::1] basis, int64_t[::1] pivots, uint64_t[:, ::1] targets):
    """Reduce each target row in place against an RREF basis."""
    cdef Py_ssize_t i, t, w, word
    cdef Py_ssize_t nwords = basis.shape[1]
    cdef uint64_t bit
    for t in range(targets.shape[0]):
        for i in range(pivots.shape[0]):
            word = pivots[i] >> 6
            bit = (<uint64_t>1) << (pivots[i] & 63)
            if targets[t, word] & bit:
                for w in range(word, nwords):
                    targets[t, w] ^= basis[i, w]
