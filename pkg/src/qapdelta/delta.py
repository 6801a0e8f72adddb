"""Reference cost and swap-delta formulas, plus the brute-force oracle.

Everything here is written for clarity, not speed: each formula is a literal
transcription that the compiled kernels and the delta table are tested
against. ``perm`` is always location -> facility and a delta is
``cost(after swap) - cost(before swap)``.

Notation in comments: ``d(x, y) = dist[x][y]`` and
``F(x, y) = flow[perm[x]][perm[y]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import Permutation, QapInstance, check_perm

R_VARIANTS = ("literal", "pattern_consistent")

# The "literal" R-term formulas only work when their flow symbols are read at
# the post-swap permutation. At the pre-swap permutation they are off on
# asymmetric instances; "pattern_consistent" rebuilds every R term from the
# pairwise-delta pattern instead and is exact.
ADJUDICATED_R_VARIANT = "pattern_consistent"

FLOW_PERMS = ("pre", "post")

# Which permutation the O(1) update formulas read their flow terms at.
# "post" is exact on every instance. With "pre" the disjoint correction
# comes out with the wrong sign, and the overlap correction is only right
# when the distance bracket vanishes (symmetric distances).
DISJOINT_FLOWS = "post"
OVERLAP_FLOWS = "post"


def cost(inst: QapInstance, perm: Permutation) -> int:
    """Objective: sum over all ordered (i, j), diagonal included, of d(i,j) * F(i,j)."""
    perm = check_perm(inst, perm)
    d, f, p = inst.d, inst.f, perm.assign
    total = 0
    for i in range(inst.n):
        di, fi = d[i], f[p[i]]
        for j in range(inst.n):
            total += di[j] * fi[p[j]]
    return total


def _cost_np(inst: QapInstance, assign) -> int:
    a = np.asarray(assign, dtype=np.intp)
    return int((inst.dist * inst.flow[np.ix_(a, a)]).sum())


def delta_oracle(inst: QapInstance, perm: Permutation, p: int, q: int) -> int:
    """Ground truth: evaluate the full objective before and after the swap."""
    perm = check_perm(inst, perm)
    if p == q:
        raise ValueError(f"swap needs two distinct locations, got {p} twice")
    a = list(perm.assign)
    before = _cost_np(inst, a)
    a[p], a[q] = a[q], a[p]
    return _cost_np(inst, a) - before


def oracle_deltas(inst: QapInstance, perm: Permutation) -> dict[tuple[int, int], int]:
    """Oracle delta for every pair ``i < j``."""
    perm = check_perm(inst, perm)
    base = _cost_np(inst, perm.assign)
    out = {}
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            a = list(perm.assign)
            a[i], a[j] = a[j], a[i]
            out[i, j] = _cost_np(inst, a) - base
    return out


def delta_full(inst: QapInstance, perm: Permutation, i: int, j: int) -> int:
    """O(n) swap delta: two head terms plus the sum over every other location g."""
    if i == j:
        raise ValueError(f"swap needs two distinct locations, got {i} twice")
    d, f = inst.d, inst.f
    p = perm.assign if isinstance(perm, Permutation) else perm
    pi, pj = p[i], p[j]
    fi, fj = f[pi], f[pj]
    total = (d[i][i] - d[j][j]) * (fj[pj] - fi[pi]) + (d[i][j] - d[j][i]) * (
        fj[pi] - fi[pj]
    )
    di, dj = d[i], d[j]
    for g in range(inst.n):
        if g == i or g == j:
            continue
        pg = p[g]
        fg = f[pg]
        dg = d[g]
        total += (dg[i] - dg[j]) * (fg[pj] - fg[pi]) + (di[g] - dj[g]) * (
            fj[pg] - fi[pg]
        )
    return total


def _flow_perm(perm, i, j, flows):
    if flows not in FLOW_PERMS:
        raise ValueError(f"flows must be one of {FLOW_PERMS}, got {flows!r}")
    a = list(perm.assign if isinstance(perm, Permutation) else perm)
    if flows == "post":
        a[i], a[j] = a[j], a[i]
    return a


def delta_disjoint_update(
    inst: QapInstance,
    perm: Permutation,
    old: int,
    i: int,
    j: int,
    p: int,
    q: int,
    flows: str = DISJOINT_FLOWS,
) -> int:
    """O(1) update of pair (i, j) after swapping (p, q), with ``{i,j} & {p,q}`` empty.

    ``perm`` is the permutation before the swap; ``flows`` picks the
    permutation the facility lookups use.
    """
    if len({i, j, p, q}) != 4:
        raise ValueError(f"pairs ({i}, {j}) and ({p}, {q}) must be disjoint")
    d, f = inst.d, inst.f
    a = _flow_perm(perm, p, q, flows)
    ap, aq, ai, aj = a[p], a[q], a[i], a[j]
    return (
        old
        + (d[p][i] - d[p][j] + d[q][j] - d[q][i])
        * (f[ap][aj] - f[ap][ai] + f[aq][ai] - f[aq][aj])
        + (d[i][p] - d[j][p] + d[j][q] - d[i][q])
        * (f[aj][ap] - f[ai][ap] + f[ai][aq] - f[aj][aq])
    )


@dataclass(frozen=True)
class RTerms:
    """Within-triple corrections for the triple (i, j, k) around the swap (i, j)."""

    r_ij: int
    r_ik: int
    r_jk: int
    r_ik_star: int
    r_jk_star: int

    def combination(self) -> int:
        return -self.r_ik - self.r_jk + self.r_ij + self.r_ik_star + self.r_jk_star


def _distinct3(i, j, k):
    if len({i, j, k}) != 3:
        raise ValueError(f"indices must be pairwise distinct, got ({i}, {j}, {k})")


def _r_literal(D, F, i, j, k) -> RTerms:
    r_ij = (
        (D(i, k) - D(j, k)) * (F(i, k) - F(j, k))
        + (D(k, i) - D(k, j)) * (F(k, i) - F(k, j))
        + (D(i, i) - D(j, j)) * (F(i, i) - F(j, j))
        + (D(i, j) - D(j, i)) * (F(i, j) - F(j, i))
    )
    r_ik = (
        (D(i, j) - D(k, j)) * (F(k, i) - F(j, i))
        + (D(j, i) - D(j, k)) * (F(i, k) - F(i, j))
        + (D(i, i) - D(k, k)) * (F(k, k) - F(j, j))
        + (D(k, i) - D(i, k)) * (F(j, k) - F(k, j))
    )
    r_jk = (
        (D(k, i) - D(j, i)) * (F(i, j) - F(k, j))
        + (D(i, k) - D(i, j)) * (F(j, i) - F(j, k))
        + (D(j, j) - D(k, k)) * (F(k, k) - F(i, i))
        + (D(k, j) - D(j, k)) * (F(i, k) - F(k, i))
    )
    r_ik_star = (
        (D(i, j) - D(k, j)) * (F(k, j) - F(i, j))
        + (D(j, i) - D(j, k)) * (F(j, k) - F(j, i))
        + (D(i, i) - D(k, k)) * (F(k, k) - F(i, i))
        + (D(i, k) - D(k, i)) * (F(k, i) - F(i, k))
    )
    r_jk_star = (
        (D(j, i) - D(k, i)) * (F(k, i) - F(j, i))
        + (D(i, j) - D(i, k)) * (F(i, k) - F(i, j))
        + (D(j, j) - D(k, k)) * (F(k, k) - F(j, j))
        + (D(j, k) - D(k, j)) * (F(k, j) - F(j, k))
    )
    return RTerms(r_ij, r_ik, r_jk, r_ik_star, r_jk_star)


def pair_part(D, F, x, y, z) -> int:
    """Part of delta(x, y) that involves only x, y and the third index z.

    Head terms of the pairwise delta plus its ``g = z`` summand.
    """
    return (
        (D(x, x) - D(y, y)) * (F(y, y) - F(x, x))
        + (D(x, y) - D(y, x)) * (F(y, x) - F(x, y))
        + (D(z, x) - D(z, y)) * (F(z, y) - F(z, x))
        + (D(x, z) - D(y, z)) * (F(y, z) - F(x, z))
    )


def r_terms(
    inst: QapInstance,
    perm: Permutation,
    i: int,
    j: int,
    k: int,
    variant: str = "literal",
) -> RTerms:
    """R terms for the swap (i, j) seen from the third index k.

    ``perm`` is the pre-swap permutation and every flow lookup uses it.
    ``literal`` evaluates the closed-form expressions term by term; ``pattern_consistent``
    derives unstarred terms at the pre-swap and starred terms at the post-swap
    permutation from :func:`pair_part`.
    """
    _distinct3(i, j, k)
    d, f = inst.d, inst.f
    a = perm.assign if isinstance(perm, Permutation) else perm

    def D(x, y):
        return d[x][y]

    def F(x, y):
        return f[a[x]][a[y]]

    if variant == "literal":
        return _r_literal(D, F, i, j, k)
    if variant != "pattern_consistent":
        raise ValueError(f"unknown R variant {variant!r}; expected one of {R_VARIANTS}")
    b = list(a)
    b[i], b[j] = b[j], b[i]

    def Fs(x, y):
        return f[b[x]][b[y]]

    return RTerms(
        r_ij=pair_part(D, F, i, j, k),
        r_ik=pair_part(D, F, i, k, j),
        r_jk=pair_part(D, F, j, k, i),
        r_ik_star=pair_part(D, Fs, i, k, j),
        r_jk_star=pair_part(D, Fs, j, k, i),
    )


def delta_overlap_via_r(
    delta_ij: int, delta_ik: int, delta_jk: int, delta_ik_star: int, rterms: RTerms
) -> int:
    """New delta(j, k) from old deltas, the fresh delta(i, k) and all five R terms."""
    r = rterms
    return (
        delta_ik
        + delta_jk
        - delta_ij
        - delta_ik_star
        - r.r_ik
        - r.r_jk
        + r.r_ij
        + r.r_ik_star
        + r.r_jk_star
    )


def overlap_brackets(
    inst: QapInstance, perm: Permutation, i: int, j: int, k: int, flows: str = OVERLAP_FLOWS
) -> tuple[int, int]:
    """The distance and flow brackets of the simplified overlap correction."""
    d, f = inst.d, inst.f
    a = _flow_perm(perm, i, j, flows)
    ai, aj, ak = a[i], a[j], a[k]
    dd = d[i][j] - d[i][k] - d[j][i] + d[j][k] + d[k][i] - d[k][j]
    ff = f[ai][aj] - f[ai][ak] - f[aj][ai] + f[aj][ak] + f[ak][ai] - f[ak][aj]
    return dd, ff


def delta_overlap_update(
    inst: QapInstance,
    perm: Permutation,
    delta_ij: int,
    delta_ik: int,
    delta_jk: int,
    delta_ik_star: int,
    i: int,
    j: int,
    k: int,
    flows: str = OVERLAP_FLOWS,
) -> int:
    """O(1) new delta(j, k) after swapping (i, j).

    ``perm`` is the pre-swap permutation; ``delta_ik_star`` must already be
    the post-swap delta(i, k). ``flows`` picks the permutation the flow
    bracket is read at.
    """
    _distinct3(i, j, k)
    dd, ff = overlap_brackets(inst, perm, i, j, k, flows)
    return delta_jk + delta_ik - delta_ij - delta_ik_star - dd * ff
