"""Pure-Python delta-table kernels, used when the compiled extension is absent.

Mirrors ``_kernels.pyx`` function for function. Matrices are nested lists,
vectors are flat lists; the delta table is the strict upper triangle stored
row by row (see :func:`tri_index`).
"""

from __future__ import annotations

NAME = "python"

FULL, DISJOINT, OVERLAP, REVERSAL, INIT = range(5)


def matrix(a):
    return [list(map(int, row)) for row in a]


def vector(a):
    return [int(v) for v in a]


def zeros(n):
    return [0] * n


def zeros_matrix(n):
    return [[0] * n for _ in range(n)]


def tolist(v):
    return list(v)


def tri_index(n, i, j):
    # requires i < j
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def full_delta(d, f, perm, n, i, j):
    pi, pj = perm[i], perm[j]
    fi, fj = f[pi], f[pj]
    di, dj = d[i], d[j]
    s = (di[i] - dj[j]) * (fj[pj] - fi[pi]) + (di[j] - dj[i]) * (fj[pi] - fi[pj])
    for g in range(n):
        if g == i or g == j:
            continue
        pg = perm[g]
        fg = f[pg]
        dg = d[g]
        s += (dg[i] - dg[j]) * (fg[pj] - fg[pi]) + (di[g] - dj[g]) * (fj[pg] - fi[pg])
    return s


def table_init(d, f, perm, values, counters):
    n = len(perm)
    idx = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            values[idx] = full_delta(d, f, perm, n, i, j)
            idx += 1
    counters[INIT] += idx


def apply_swap(d, f, perm, values, p, q, novel, counters):
    n = len(perm)
    if p > q:
        p, q = q, p
    # every O(1) rule below reads flows at the post-swap permutation
    perm[p], perm[q] = perm[q], perm[p]
    fp, fq = perm[p], perm[q]
    dp, dq = d[p], d[q]
    Fp, Fq = f[fp], f[fq]
    idx = 0
    for i in range(n - 1):
        if i == p or i == q:
            idx += n - i - 1
            continue
        fi = perm[i]
        di = d[i]
        Fi = f[fi]
        for j in range(i + 1, n):
            if j == p or j == q:
                idx += 1
                continue
            fj = perm[j]
            Fj = f[fj]
            values[idx] += (dp[i] - dp[j] + dq[j] - dq[i]) * (
                Fp[fj] - Fp[fi] + Fq[fi] - Fq[fj]
            ) + (di[p] - d[j][p] + d[j][q] - di[q]) * (Fj[fp] - Fi[fp] + Fi[fq] - Fj[fq])
            idx += 1
    counters[DISJOINT] += n * (n - 1) // 2 - 2 * (n - 2) - 1

    ipq = tri_index(n, p, q)
    old_pq = values[ipq]
    for k in range(n):
        if k == p or k == q:
            continue
        ipk = tri_index(n, p, k) if p < k else tri_index(n, k, p)
        iqk = tri_index(n, q, k) if q < k else tri_index(n, k, q)
        old_pk = values[ipk]
        new_pk = full_delta(d, f, perm, n, p, k)
        values[ipk] = new_pk
        if novel:
            a, b, c = fp, fq, perm[k]
            Fa, Fb, Fc = f[a], f[b], f[c]
            dd = dp[q] - dp[k] - dq[p] + dq[k] + d[k][p] - d[k][q]
            ff = Fa[b] - Fa[c] - Fb[a] + Fb[c] + Fc[a] - Fc[b]
            values[iqk] = values[iqk] + old_pk - old_pq - new_pk - dd * ff
        else:
            values[iqk] = full_delta(d, f, perm, n, q, k)
    if novel:
        counters[FULL] += n - 2
        counters[OVERLAP] += n - 2
    else:
        counters[FULL] += 2 * (n - 2)
    values[ipq] = -old_pq
    counters[REVERSAL] += 1


def search(
    d, f, perm, values, tabu_until, tenures, novel, cost, best_cost, start,
    counters, best_perm, trajectory,
):
    """Run ``len(tenures)`` tabu iterations numbered from ``start + 1``.

    ``perm``/``values``/``tabu_until`` are the live search state, ``best_perm``
    receives the best permutation and ``trajectory[t]`` the cost after the
    ``t``-th iteration of this call. Returns ``(best_cost, cost)``.
    """
    n = len(perm)
    for t0 in range(len(tenures)):
        t = start + t0 + 1
        best_delta = None
        br = bs = -1
        fb_delta = None
        fr = fs = -1
        idx = 0
        for i in range(n - 1):
            tab_i = tabu_until[i]
            pi = perm[i]
            for j in range(i + 1, n):
                delta = values[idx]
                idx += 1
                if fb_delta is None or delta < fb_delta:
                    fb_delta, fr, fs = delta, i, j
                admissible = (
                    tab_i[perm[j]] <= t
                    or tabu_until[j][pi] <= t
                    or cost + delta < best_cost
                )
                if admissible and (best_delta is None or delta < best_delta):
                    best_delta, br, bs = delta, i, j
        if br < 0:
            best_delta, br, bs = fb_delta, fr, fs
        tenure = tenures[t0]
        tabu_until[br][perm[br]] = t + tenure
        tabu_until[bs][perm[bs]] = t + tenure
        cost += best_delta
        apply_swap(d, f, perm, values, br, bs, novel, counters)
        if cost < best_cost:
            best_cost = cost
            best_perm[:] = perm
        trajectory[t0] = cost
    return best_cost, cost
