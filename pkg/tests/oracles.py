"""Independent ground truth used by the test-suite.

Nothing here imports from qapdelta's formula modules: costs are plain
double loops over nested lists and deltas are full before/after
differences.
"""

from itertools import permutations


def naive_cost(dist, flow, assign):
    n = len(assign)
    return sum(dist[i][j] * flow[assign[i]][assign[j]] for i in range(n) for j in range(n))


def naive_delta(dist, flow, assign, p, q):
    after = list(assign)
    after[p], after[q] = after[q], after[p]
    return naive_cost(dist, flow, after) - naive_cost(dist, flow, assign)


def naive_table(dist, flow, assign):
    n = len(assign)
    return {(i, j): naive_delta(dist, flow, assign, i, j) for i in range(n) for j in range(i + 1, n)}


def brute_force_min(dist, flow):
    n = len(dist)
    return min(naive_cost(dist, flow, a) for a in permutations(range(n)))


def r_terms_by_hand(d, F, i, j, k):
    """Second transcription of the five R terms, typed up separately.

    ``d`` is the distance matrix (nested lists), ``F(x, y)`` the flow
    between the facilities at locations x and y.
    """
    rij = ((d[i][k] - d[j][k]) * (F(i, k) - F(j, k)) + (d[k][i] - d[k][j]) * (F(k, i) - F(k, j))
           + (d[i][i] - d[j][j]) * (F(i, i) - F(j, j)) + (d[i][j] - d[j][i]) * (F(i, j) - F(j, i)))
    rik = ((d[i][j] - d[k][j]) * (F(k, i) - F(j, i)) + (d[j][i] - d[j][k]) * (F(i, k) - F(i, j))
           + (d[i][i] - d[k][k]) * (F(k, k) - F(j, j)) + (d[k][i] - d[i][k]) * (F(j, k) - F(k, j)))
    rjk = ((d[k][i] - d[j][i]) * (F(i, j) - F(k, j)) + (d[i][k] - d[i][j]) * (F(j, i) - F(j, k))
           + (d[j][j] - d[k][k]) * (F(k, k) - F(i, i)) + (d[k][j] - d[j][k]) * (F(i, k) - F(k, i)))
    rik_s = ((d[i][j] - d[k][j]) * (F(k, j) - F(i, j)) + (d[j][i] - d[j][k]) * (F(j, k) - F(j, i))
             + (d[i][i] - d[k][k]) * (F(k, k) - F(i, i)) + (d[i][k] - d[k][i]) * (F(k, i) - F(i, k)))
    rjk_s = ((d[j][i] - d[k][i]) * (F(k, i) - F(j, i)) + (d[i][j] - d[i][k]) * (F(i, k) - F(i, j))
             + (d[j][j] - d[k][k]) * (F(k, k) - F(j, j)) + (d[j][k] - d[k][j]) * (F(k, j) - F(j, k)))
    return rij, rik, rjk, rik_s, rjk_s
