# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of sensesearch._pykernels.

Arithmetic expression order must match the pure-Python file so both backends
produce bit-identical floats (the extension is compiled with
-ffp-contract=off for the same reason).
"""

from libc.stdlib cimport free, malloc, qsort

DEF KEY_BITS = 21


cdef int _cmp_keys(const void* a, const void* b) noexcept nogil:
    cdef long long x = (<const long long*> a)[0]
    cdef long long y = (<const long long*> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def add_weighted_tf(double[:] scores, int[:] doc_positions, int[:] freqs,
                    int[:] title_freqs, double weight, double title_bonus):
    """scores[p] += weight * (tf + title_bonus * title_tf) for one query term."""
    cdef Py_ssize_t i
    cdef Py_ssize_t n = doc_positions.shape[0]
    for i in range(n):
        scores[doc_positions[i]] += weight * (freqs[i] + title_bonus * title_freqs[i])


def fuse_and_order(int[:] url_ids, int[:] ranks, int[:] counts,
                   int[:] best_ranks, int[:] order):
    """Count entries per url id, track minimum rank, fill `order` with url ids
    sorted by (count desc, best rank asc, url id asc). Same contract as the
    pure version: counts zeroed, best_ranks preset to 2**21 - 1, all values
    < 2**21.
    """
    cdef Py_ssize_t i
    cdef Py_ssize_t n = url_ids.shape[0]
    cdef Py_ssize_t m = counts.shape[0]
    cdef int u, r
    cdef long long* keys
    cdef long long mask = (1 << KEY_BITS) - 1

    for i in range(n):
        u = url_ids[i]
        r = ranks[i]
        counts[u] += 1
        if r < best_ranks[u]:
            best_ranks[u] = r

    if m == 0:
        return
    keys = <long long*> malloc(m * sizeof(long long))
    if keys == NULL:
        raise MemoryError()
    try:
        # count inverted within 21 bits so the key never reaches the sign bit
        for i in range(m):
            keys[i] = ((<long long> ((1 << KEY_BITS) - 1 - counts[i])) << (2 * KEY_BITS)) \
                | ((<long long> best_ranks[i]) << KEY_BITS) | <long long> i
        qsort(keys, m, sizeof(long long), _cmp_keys)
        for i in range(m):
            order[i] = <int> (keys[i] & mask)
    finally:
        free(keys)
