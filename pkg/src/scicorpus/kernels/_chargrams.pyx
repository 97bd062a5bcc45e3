# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled character n-gram hashing kernel.

Semantics are identical to ``scicorpus.kernels.pure``; see there for
the documented hashing scheme.
"""

import numpy as np

from libc.stdint cimport uint8_t, uint64_t

# The offset basis exceeds the signed 64-bit range, so build it from
# two halves to keep the constant a plain C uint64_t.
cdef uint64_t FNV_OFFSET = (<uint64_t> 0xCBF29CE4 << 32) | <uint64_t> 0x84222325
cdef uint64_t FNV_PRIME = <uint64_t> 0x100000001B3


cdef inline uint64_t _fnv1a(const uint8_t* data, Py_ssize_t length) noexcept nogil:
    cdef uint64_t h = FNV_OFFSET
    cdef Py_ssize_t i
    for i in range(length):
        h = (h ^ data[i]) * FNV_PRIME
    return h


def fnv1a_64(bytes data):
    """FNV-1a 64-bit hash of a byte string."""
    return int(_fnv1a(<const uint8_t*> data, len(data)))


def ngram_hash_counts(str text, int dim, int max_n):
    """Character n-gram occurrence counts hashed into ``dim`` buckets."""
    cdef bytes encoded = text.encode("utf-8")
    cdef const uint8_t* buf = <const uint8_t*> encoded
    cdef Py_ssize_t nbytes = len(encoded)
    counts_arr = np.zeros(dim, dtype=np.float64)
    cdef double[::1] counts = counts_arr
    if nbytes == 0:
        return counts_arr

    # Code-point boundaries inside the UTF-8 buffer.
    offsets_arr = np.empty(nbytes + 1, dtype=np.int64)
    cdef long long[::1] offsets = offsets_arr
    cdef Py_ssize_t nchars = 0, pos = 0
    cdef uint8_t lead
    while pos < nbytes:
        offsets[nchars] = pos
        lead = buf[pos]
        if lead < 0x80:
            pos += 1
        elif lead < 0xE0:
            pos += 2
        elif lead < 0xF0:
            pos += 3
        else:
            pos += 4
        nchars += 1
    offsets[nchars] = nbytes

    cdef Py_ssize_t i, n, limit
    cdef Py_ssize_t start, end
    cdef uint64_t h
    cdef uint64_t udim = <uint64_t> dim
    with nogil:
        for i in range(nchars):
            limit = max_n if max_n <= nchars - i else nchars - i
            start = offsets[i]
            for n in range(1, limit + 1):
                end = offsets[i + n]
                h = _fnv1a(buf + start, end - start)
                counts[<Py_ssize_t> (h % udim)] += 1.0
    return counts_arr
