# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled delta-table kernels; same API as ``_pykernels``.

All buffers are C-contiguous int64 numpy arrays. The delta table is the
strict upper triangle stored row by row.
"""

import numpy as np

ctypedef long long i64

NAME = "compiled"

cdef enum:
    FULL = 0
    DISJOINT = 1
    OVERLAP = 2
    REVERSAL = 3
    INIT = 4


def matrix(a):
    return np.ascontiguousarray(np.array(a, dtype=np.int64))


def vector(a):
    return np.ascontiguousarray(np.array(list(a), dtype=np.int64))


def zeros(Py_ssize_t n):
    return np.zeros(n, dtype=np.int64)


def zeros_matrix(Py_ssize_t n):
    return np.zeros((n, n), dtype=np.int64)


def tolist(v):
    return np.asarray(v).tolist()


cdef inline Py_ssize_t _tri(Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def tri_index(Py_ssize_t n, Py_ssize_t i, Py_ssize_t j):
    return _tri(n, i, j)


cdef inline i64 _full(const i64[:, ::1] d, const i64[:, ::1] f, const i64[::1] perm,
                      Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef i64 pi = perm[i], pj = perm[j], pg
    cdef i64 s = (d[i, i] - d[j, j]) * (f[pj, pj] - f[pi, pi]) \
        + (d[i, j] - d[j, i]) * (f[pj, pi] - f[pi, pj])
    cdef Py_ssize_t g
    for g in range(n):
        if g == i or g == j:
            continue
        pg = perm[g]
        s += (d[g, i] - d[g, j]) * (f[pg, pj] - f[pg, pi]) \
            + (d[i, g] - d[j, g]) * (f[pj, pg] - f[pi, pg])
    return s


def full_delta(const i64[:, ::1] d, const i64[:, ::1] f, const i64[::1] perm,
               Py_ssize_t n, Py_ssize_t i, Py_ssize_t j):
    return _full(d, f, perm, n, i, j)


def table_init(const i64[:, ::1] d, const i64[:, ::1] f, const i64[::1] perm,
               i64[::1] values, i64[::1] counters):
    cdef Py_ssize_t n = perm.shape[0], i, j, idx = 0
    with nogil:
        for i in range(n - 1):
            for j in range(i + 1, n):
                values[idx] = _full(d, f, perm, n, i, j)
                idx += 1
    counters[INIT] += idx


cdef void _apply_swap(const i64[:, ::1] d, const i64[:, ::1] f, i64[::1] perm,
                      i64[::1] values, Py_ssize_t p, Py_ssize_t q, bint novel,
                      i64[::1] counters) noexcept nogil:
    cdef Py_ssize_t n = perm.shape[0], i, j, k, idx, ipq, ipk, iqk, t
    cdef i64 fp, fq, fi, fj, a, b, c, old_pq, old_pk, new_pk, dd, ff
    if p > q:
        t = p
        p = q
        q = t
    # every O(1) rule below reads flows at the post-swap permutation
    fp = perm[q]
    fq = perm[p]
    perm[p] = fp
    perm[q] = fq
    idx = 0
    for i in range(n - 1):
        if i == p or i == q:
            idx += n - i - 1
            continue
        fi = perm[i]
        for j in range(i + 1, n):
            if j == p or j == q:
                idx += 1
                continue
            fj = perm[j]
            values[idx] += (d[p, i] - d[p, j] + d[q, j] - d[q, i]) \
                * (f[fp, fj] - f[fp, fi] + f[fq, fi] - f[fq, fj]) \
                + (d[i, p] - d[j, p] + d[j, q] - d[i, q]) \
                * (f[fj, fp] - f[fi, fp] + f[fi, fq] - f[fj, fq])
            idx += 1
    counters[DISJOINT] += n * (n - 1) // 2 - 2 * (n - 2) - 1

    ipq = _tri(n, p, q)
    old_pq = values[ipq]
    for k in range(n):
        if k == p or k == q:
            continue
        ipk = _tri(n, p, k) if p < k else _tri(n, k, p)
        iqk = _tri(n, q, k) if q < k else _tri(n, k, q)
        old_pk = values[ipk]
        new_pk = _full(d, f, perm, n, p, k)
        values[ipk] = new_pk
        if novel:
            a = fp
            b = fq
            c = perm[k]
            dd = d[p, q] - d[p, k] - d[q, p] + d[q, k] + d[k, p] - d[k, q]
            ff = f[a, b] - f[a, c] - f[b, a] + f[b, c] + f[c, a] - f[c, b]
            values[iqk] = values[iqk] + old_pk - old_pq - new_pk - dd * ff
        else:
            values[iqk] = _full(d, f, perm, n, q, k)
    if novel:
        counters[FULL] += n - 2
        counters[OVERLAP] += n - 2
    else:
        counters[FULL] += 2 * (n - 2)
    values[ipq] = -old_pq
    counters[REVERSAL] += 1


def apply_swap(const i64[:, ::1] d, const i64[:, ::1] f, i64[::1] perm, i64[::1] values,
               Py_ssize_t p, Py_ssize_t q, bint novel, i64[::1] counters):
    with nogil:
        _apply_swap(d, f, perm, values, p, q, novel, counters)


def search(const i64[:, ::1] d, const i64[:, ::1] f, i64[::1] perm, i64[::1] values,
           i64[:, ::1] tabu_until, const i64[::1] tenures, bint novel, i64 cost,
           i64 best_cost, i64 start, i64[::1] counters, i64[::1] best_perm,
           i64[::1] trajectory):
    """Run ``len(tenures)`` tabu iterations numbered from ``start + 1``.

    Returns ``(best_cost, cost)``; the other buffers are updated in place.
    """
    cdef Py_ssize_t n = perm.shape[0], iters = tenures.shape[0]
    cdef Py_ssize_t t0, i, j, idx, br, bs, fr, fs, x
    cdef i64 t, delta, best_delta, fb_delta, pi, tenure
    cdef bint found, admissible
    with nogil:
        for t0 in range(iters):
            t = start + t0 + 1
            found = False
            best_delta = 0
            br = bs = -1
            fb_delta = values[0]
            fr = 0
            fs = 1
            idx = 0
            for i in range(n - 1):
                pi = perm[i]
                for j in range(i + 1, n):
                    delta = values[idx]
                    idx += 1
                    if delta < fb_delta:
                        fb_delta = delta
                        fr = i
                        fs = j
                    admissible = (tabu_until[i, perm[j]] <= t
                                  or tabu_until[j, pi] <= t
                                  or cost + delta < best_cost)
                    if admissible and (not found or delta < best_delta):
                        found = True
                        best_delta = delta
                        br = i
                        bs = j
            if not found:
                best_delta = fb_delta
                br = fr
                bs = fs
            tenure = tenures[t0]
            tabu_until[br, perm[br]] = t + tenure
            tabu_until[bs, perm[bs]] = t + tenure
            cost += best_delta
            _apply_swap(d, f, perm, values, br, bs, novel, counters)
            if cost < best_cost:
                best_cost = cost
                for x in range(n):
                    best_perm[x] = perm[x]
            trajectory[t0] = cost
    return best_cost, cost
