# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled walk kernel; see ``_walk_py`` for the contract."""

import numpy as np
from libc.stdint cimport int64_t, uint64_t


cdef inline uint64_t _next(uint64_t* state) noexcept nogil:
    state[0] += <uint64_t>0x9E3779B97F4A7C15ULL
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


def walk_counts(stay_next, jump_next, stay_prob, int64_t start, int n, int64_t trials,
                state, int64_t max_steps=10**7):
    cdef int64_t[::1] sn = np.ascontiguousarray(stay_next, dtype=np.int64)
    cdef int64_t[::1] jn = np.ascontiguousarray(jump_next, dtype=np.int64)
    cdef double[::1] sp = np.ascontiguousarray(stay_prob, dtype=np.float64)
    counts = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] c = counts
    cdef uint64_t st = <uint64_t>state
    cdef int64_t trial, node, steps
    cdef bint overflow = False
    cdef double scale = 1.0 / 9007199254740992.0
    with nogil:
        for trial in range(trials):
            node = start
            steps = 0
            while node >= 0:
                if (_next(&st) >> 11) * scale < sp[node]:
                    node = sn[node]
                else:
                    node = jn[node]
                steps += 1
                if steps > max_steps:
                    overflow = True
                    break
            if overflow:
                break
            c[-node - 1] += 1
    if overflow:
        raise RuntimeError("walk exceeded the step limit")
    return counts, int(st)
