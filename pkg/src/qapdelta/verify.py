"""Self-verification suites: symbolic identities plus oracle sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from . import symbolic
from .delta import (
    ADJUDICATED_R_VARIANT,
    FLOW_PERMS,
    OVERLAP_FLOWS,
    R_VARIANTS,
    delta_disjoint_update,
    delta_full,
    delta_oracle,
    delta_overlap_update,
    delta_overlap_via_r,
    r_terms,
)
from .instance import SHAPES, Permutation, QapInstance, random_instance
from .rng import RngState
from .table import STRATEGIES, DeltaTable, TableMismatchError

LEVELS = {
    # largest n swept, random swaps per soaked table, instances per (n, shape)
    "fast": {"max_n": 8, "soak_swaps": 10, "instances_per_n": 2},
    "full": {"max_n": 30, "soak_swaps": 60, "instances_per_n": 3},
}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tail = f" ({self.detail})" if self.detail else ""
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}{tail}"


@dataclass
class VerifyReport:
    level: str
    checks: list[Check] = field(default_factory=list)
    adjudication: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        c = Check(name, bool(passed), detail)
        self.checks.append(c)
        return c

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "passed": self.passed,
            "adjudication": self.adjudication,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }

    def __str__(self):
        lines = [c.line() for c in self.checks]
        lines.append("adjudication: " + ", ".join(f"{k}={v}" for k, v in self.adjudication.items()))
        lines.append(f"verify {self.level}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def sweep_delta_full(inst: QapInstance, perm: Permutation) -> list[tuple]:
    """Pairs where :func:`delta_full` disagrees with the oracle."""
    return [
        (i, j)
        for i in range(inst.n)
        for j in range(i + 1, inst.n)
        if delta_full(inst, perm, i, j) != delta_oracle(inst, perm, i, j)
    ]


def sweep_disjoint(inst: QapInstance, perm: Permutation, p: int, q: int, flows: str = "post"):
    post = perm.swapped(p, q)
    bad = []
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            if {i, j} & {p, q}:
                continue
            old = delta_full(inst, perm, i, j)
            got = delta_disjoint_update(inst, perm, old, i, j, p, q, flows)
            if got != delta_full(inst, post, i, j):
                bad.append((i, j))
    return bad


def overlap_triples(inst: QapInstance, perm: Permutation, swaps):
    """Yield ``(i, j, k, old_ij, old_ik, old_jk, new_ik, new_jk)`` for each swap and third index."""
    for i, j in swaps:
        post = perm.swapped(i, j)
        dij = delta_full(inst, perm, i, j)
        for k in range(inst.n):
            if k in (i, j):
                continue
            yield (
                i, j, k, dij,
                delta_full(inst, perm, i, k),
                delta_full(inst, perm, j, k),
                delta_full(inst, post, i, k),
                delta_full(inst, post, j, k),
            )


def adjudicate(insts_and_perms, swaps_for) -> dict:
    """Count exact hits of every R variant and every flow reading against the truth."""
    hits = {f"via_r[{v}]": [0, 0] for v in R_VARIANTS}
    hits.update({f"update[{fl}]": [0, 0] for fl in FLOW_PERMS})
    for inst, perm in insts_and_perms:
        for i, j, k, dij, dik, djk, dik_s, truth in overlap_triples(inst, perm, swaps_for(inst)):
            for v in R_VARIANTS:
                got = delta_overlap_via_r(dij, dik, djk, dik_s, r_terms(inst, perm, i, j, k, v))
                h = hits[f"via_r[{v}]"]
                h[0] += got == truth
                h[1] += 1
            for fl in FLOW_PERMS:
                got = delta_overlap_update(inst, perm, dij, dik, djk, dik_s, i, j, k, fl)
                h = hits[f"update[{fl}]"]
                h[0] += got == truth
                h[1] += 1
    return {k: tuple(v) for k, v in hits.items()}


def soak_table(inst: QapInstance, perm: Permutation, swaps: int, seed: int, backend=None):
    """Random swaps under both strategies, oracle-checked after each; returns failures."""
    failures = []
    tables = {s: DeltaTable(inst, perm, s, backend=backend, verify=True) for s in STRATEGIES}
    rng = RngState(seed)
    for step in range(swaps):
        p = rng.below(inst.n)
        q = rng.below(inst.n - 1)
        q += q >= p
        for s, t in tables.items():
            try:
                t.apply_swap(p, q)
            except TableMismatchError as exc:
                failures.append((s, step, str(exc)))
                return failures
        if tables["classic"].values() != tables["novel"].values():
            failures.append(("equivalence", step, "strategies diverged"))
            return failures
    return failures


def _instances(level: str):
    cfg = LEVELS[level]
    for shape in SHAPES:
        for n in range(4, cfg["max_n"] + 1):
            for r in range(cfg["instances_per_n"]):
                seed = 1000 * n + 10 * r + SHAPES.index(shape)
                inst = random_instance(n, 9, seed, shape)
                perm = Permutation.random(n, RngState(seed + 1))
                yield shape, n, seed, inst, perm


def _swaps_for(inst: QapInstance, limit: int = 6):
    pairs = [(i, j) for i in range(inst.n) for j in range(inst.n) if i != j]
    if len(pairs) <= limit * 4:
        return pairs
    rng = RngState(inst.n)
    return [pairs[rng.below(len(pairs))] for _ in range(limit)]


def run_verify(level: str = "fast", *, mutate_product: bool = False, backend=None) -> VerifyReport:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; expected one of {sorted(LEVELS)}")
    report = VerifyReport(level)

    eq3 = symbolic.verify_eq3_per_g()
    report.add("per-g correlation identity (symbolic)", eq3.holds, str(eq3))
    product = -symbolic.simplified_product() if mutate_product else None
    simp = {v: symbolic.verify_simplification(v, product) for v in R_VARIANTS}
    holding = [v for v, r in simp.items() if r.holds]
    detail = "; ".join(
        f"{v}: " + ("holds" if r.holds else f"differs in {len(r.difference)} monomials")
        for v, r in simp.items()
    )
    report.add("simplification holds for some R variant (symbolic)", bool(holding), detail)
    report.add(
        "simplification holds on symmetric zero-diagonal quotient, all variants",
        all(r.holds_on_symmetric_quotient for r in simp.values()),
    )
    post = symbolic.verify_post_swap_reading(product)
    report.add(
        "pattern R combination == product at post-swap flows (symbolic)",
        post.holds,
        "" if post.holds else f"surviving monomials: {post.difference}",
    )

    bad_full = bad_disjoint = bad_via_r = bad_update = bad_shadow = 0
    soak_fail = []
    general_pairs = []
    for shape, n, seed, inst, perm in _instances(level):
        bad_full += len(sweep_delta_full(inst, perm))
        bad_disjoint += len(sweep_disjoint(inst, perm, 0, n - 1))
        for i, j, k, dij, dik, djk, dik_s, truth in overlap_triples(inst, perm, _swaps_for(inst)):
            r = r_terms(inst, perm, i, j, k, ADJUDICATED_R_VARIANT)
            bad_via_r += delta_overlap_via_r(dij, dik, djk, dik_s, r) != truth
            bad_update += (
                delta_overlap_update(inst, perm, dij, dik, djk, dik_s, i, j, k, OVERLAP_FLOWS)
                != truth
            )
            bad_shadow += (dik_s - r.r_ik_star) + (truth - r.r_jk_star) != (
                (dik - r.r_ik) + (djk - r.r_jk) - (dij - r.r_ij)
            )
        soak_fail += soak_table(inst, perm, LEVELS[level]["soak_swaps"], seed, backend)
        if shape == "general":
            general_pairs.append((inst, perm))

    report.add("full delta == oracle, all pairs", bad_full == 0, f"{bad_full} mismatches")
    report.add("disjoint O(1) update == full delta", bad_disjoint == 0, f"{bad_disjoint} mismatches")
    report.add(
        f"overlap via R [{ADJUDICATED_R_VARIANT}] == full delta", bad_via_r == 0,
        f"{bad_via_r} mismatches",
    )
    report.add(
        f"simplified overlap update [{OVERLAP_FLOWS}-swap flows] == full delta",
        bad_update == 0, f"{bad_update} mismatches",
    )
    report.add("correlation identity with measured deltas", bad_shadow == 0, f"{bad_shadow} mismatches")
    report.add(
        "delta tables == oracle after random swaps, both strategies",
        not soak_fail, "; ".join(map(str, soak_fail[:3])),
    )

    hits = adjudicate(general_pairs[:6], _swaps_for)
    report.adjudication = {
        "r_variant": ADJUDICATED_R_VARIANT,
        "overlap_flows": OVERLAP_FLOWS,
        "simplification_holds_for": ",".join(holding) or "none",
        **{k: f"{a}/{b}" for k, (a, b) in hits.items()},
    }
    return report


def exhaustive_optimum(inst: QapInstance) -> tuple[int, Permutation]:
    """Minimum cost over all n! permutations (first minimiser in lexicographic order)."""
    import numpy as np

    best, arg = None, None
    dist, flow = inst.dist, inst.flow
    for a in permutations(range(inst.n)):
        idx = np.asarray(a)
        c = int((dist * flow[np.ix_(idx, idx)]).sum())
        if best is None or c < best:
            best, arg = c, a
    return best, Permutation(arg)
