# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for multiscale dyadic box counting.

The hot operations are (a) interleaving quantized coordinates into Morton
keys, and (b) counting distinct keys at every dyadic level of a sorted key
array in one pass.  Coarsening a dyadic box index by one level drops the
lowest bit of each coordinate, i.e. the lowest ``c`` bits of the Morton
key, and right-shifting preserves sorted order, so one sort serves every
level: for each adjacent pair of sorted keys the number of levels on which
they fall in distinct boxes is the bit length of their XOR, and a
histogram of those bit lengths yields all level counts.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline uint64_t _spread1(uint64_t v) nogil:
    # interleave with one zero bit (2 columns, <= 32 bits each)
    v &= 0xFFFFFFFFUL
    v = (v | (v << 16)) & 0x0000FFFF0000FFFFUL
    v = (v | (v << 8)) & 0x00FF00FF00FF00FFUL
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FUL
    v = (v | (v << 2)) & 0x3333333333333333UL
    v = (v | (v << 1)) & 0x5555555555555555UL
    return v


cdef inline uint64_t _spread2(uint64_t v) nogil:
    # interleave with two zero bits (3 columns, <= 21 bits each)
    v &= 0x1FFFFFUL
    v = (v | (v << 32)) & 0x1F00000000FFFFUL
    v = (v | (v << 16)) & 0x1F0000FF0000FFUL
    v = (v | (v << 8)) & 0x100F00F00F00F00FUL
    v = (v | (v << 4)) & 0x10C30C30C30C30C3UL
    v = (v | (v << 2)) & 0x1249249249249249UL
    return v


def morton_pack(cnp.int64_t[:, ::1] cols):
    """Interleave nonnegative columns (n, c) with c in {1, 2, 3} into keys."""
    cdef Py_ssize_t n = cols.shape[0]
    cdef Py_ssize_t c = cols.shape[1]
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] key = out
    cdef Py_ssize_t i
    if c == 1:
        for i in range(n):
            key[i] = <uint64_t> cols[i, 0]
    elif c == 2:
        for i in range(n):
            key[i] = _spread1(<uint64_t> cols[i, 0]) | (
                _spread1(<uint64_t> cols[i, 1]) << 1)
    elif c == 3:
        for i in range(n):
            key[i] = _spread2(<uint64_t> cols[i, 0]) | (
                _spread2(<uint64_t> cols[i, 1]) << 1) | (
                _spread2(<uint64_t> cols[i, 2]) << 2)
    else:
        raise ValueError("morton_pack supports 1..3 columns")
    return out


def multiscale_counts(cnp.uint64_t[::1] sorted_keys, cnp.int64_t[::1] shifts):
    """Distinct-value counts of (sorted_keys >> s) for each shift s.

    One pass over the data: histogram the XOR bit lengths of adjacent
    pairs, then read each count as 1 + (number of pairs whose XOR survives
    the shift).
    """
    cdef Py_ssize_t n = sorted_keys.shape[0]
    cdef Py_ssize_t m = shifts.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef int64_t hist[65]
    cdef Py_ssize_t i
    cdef int b
    cdef uint64_t x
    if n == 0:
        return out
    for b in range(65):
        hist[b] = 0
    with nogil:
        for i in range(1, n):
            x = sorted_keys[i] ^ sorted_keys[i - 1]
            b = 0
            while x:
                x >>= 1
                b += 1
            hist[b] += 1
    # suffix sums: pairs with bit length > s fall in distinct boxes at shift s
    cdef int64_t acc
    cdef Py_ssize_t j
    for j in range(m):
        acc = 1
        for b in range(<int> shifts[j] + 1, 65):
            acc += hist[b]
        res[j] = acc
    return out
