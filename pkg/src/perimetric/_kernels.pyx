# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels for tours and ultrametric violation scans.

Distances arrive as a flat row-major n*n matrix of int64 values (the
callers pre-scale exact dyadic rationals to integers). Results match the
pure-Python backend bit for bit; ties always go to the lowest index.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

ctypedef long long i64


cdef i64* _as_buffer(object dist, Py_ssize_t size) except NULL:
    cdef i64* buf = <i64*> malloc(size * sizeof(i64))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(size):
            buf[i] = dist[i]
    except BaseException:
        free(buf)
        raise
    return buf


def nn_tour_ints(object dist, Py_ssize_t n, Py_ssize_t start):
    """Greedy nearest-unvisited cycle from `start`; ties go to the lowest index."""
    if n <= 0:
        raise ValueError("empty matrix")
    if not 0 <= start < n:
        raise ValueError("start out of range")
    cdef i64* d = _as_buffer(dist, n * n)
    cdef unsigned char* seen = <unsigned char*> malloc(n)
    cdef Py_ssize_t* order = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    if seen == NULL or order == NULL:
        free(d)
        free(seen)
        free(order)
        raise MemoryError()
    cdef i64 total = 0
    cdef i64 best_d = 0
    cdef i64 cand
    cdef Py_ssize_t cur = start
    cdef Py_ssize_t best, j, step
    with nogil:
        memset(seen, 0, n)
        seen[start] = 1
        order[0] = start
        for step in range(1, n):
            best = -1
            for j in range(n):
                if not seen[j]:
                    cand = d[cur * n + j]
                    if best < 0 or cand < best_d:
                        best = j
                        best_d = cand
            seen[best] = 1
            order[step] = best
            total += best_d
            cur = best
        total += d[cur * n + start]
        order[n] = start
    out = [order[j] for j in range(n + 1)]
    free(d)
    free(seen)
    free(order)
    return out, total


cdef inline i64 _cycle_len(i64* d, Py_ssize_t n, Py_ssize_t* perm, Py_ssize_t m) noexcept nogil:
    cdef i64 total = d[perm[0]]
    cdef Py_ssize_t i
    for i in range(m - 1):
        total += d[perm[i] * n + perm[i + 1]]
    total += d[perm[m - 1] * n]
    return total


def brute_force_ints(object dist, Py_ssize_t n):
    """Exact minimum cyclic tour length with index 0 fixed first."""
    if n <= 0:
        raise ValueError("empty matrix")
    if n == 1:
        return dist[0]
    cdef i64* d = _as_buffer(dist, n * n)
    cdef Py_ssize_t m = n - 1
    cdef Py_ssize_t* perm = <Py_ssize_t*> malloc(m * sizeof(Py_ssize_t))
    cdef Py_ssize_t* ctr = <Py_ssize_t*> malloc(m * sizeof(Py_ssize_t))
    if perm == NULL or ctr == NULL:
        free(d)
        free(perm)
        free(ctr)
        raise MemoryError()
    cdef i64 best, cur
    cdef Py_ssize_t i, tmp
    with nogil:
        for i in range(m):
            perm[i] = i + 1
            ctr[i] = 0
        best = _cycle_len(d, n, perm, m)
        # Heap's algorithm over the m free positions.
        i = 0
        while i < m:
            if ctr[i] < i:
                if i & 1:
                    tmp = perm[ctr[i]]; perm[ctr[i]] = perm[i]; perm[i] = tmp
                else:
                    tmp = perm[0]; perm[0] = perm[i]; perm[i] = tmp
                cur = _cycle_len(d, n, perm, m)
                if cur < best:
                    best = cur
                ctr[i] += 1
                i = 0
            else:
                ctr[i] = 0
                i += 1
    free(d)
    free(perm)
    free(ctr)
    return best


def triple_violations_ints(object dist, Py_ssize_t n, Py_ssize_t cap):
    """Strong-triangle-inequality violations as canonical (i, j, k) triples.

    Reported when d[i,k] > max(d[i,j], d[j,k]) with i < k; mirror images
    are not repeated. Emission order is (i, k, j) ascending, capped at `cap`.
    """
    if cap <= 0:
        return []
    cdef i64* d = _as_buffer(dist, n * n)
    cdef Py_ssize_t* found = <Py_ssize_t*> malloc(3 * cap * sizeof(Py_ssize_t))
    if found == NULL:
        free(d)
        raise MemoryError()
    cdef Py_ssize_t count = 0
    cdef Py_ssize_t i, j, k
    cdef i64 d_ik
    cdef bint full = 0
    with nogil:
        for i in range(n):
            if full:
                break
            for k in range(i + 1, n):
                if full:
                    break
                d_ik = d[i * n + k]
                for j in range(n):
                    if j == i or j == k:
                        continue
                    if d_ik > d[i * n + j] and d_ik > d[j * n + k]:
                        found[3 * count] = i
                        found[3 * count + 1] = j
                        found[3 * count + 2] = k
                        count += 1
                        if count == cap:
                            full = 1
                            break
    out = [
        (found[3 * t], found[3 * t + 1], found[3 * t + 2])
        for t in range(count)
    ]
    free(d)
    free(found)
    return out
