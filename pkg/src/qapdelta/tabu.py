"""Robust tabu search over the 2-exchange neighbourhood."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

import numpy as np

from .delta import cost as objective
from .instance import Permutation, QapInstance
from .rng import RngState
from .table import DeltaTable, UpdateStats, check_strategy


def default_tenure(n: int) -> tuple[int, int]:
    """Tenure range ``[floor(0.9 n), ceil(1.1 n)]``, at least 1."""
    low = max(1, 9 * n // 10)
    high = max(low, -(-11 * n // 10))
    return low, high


def trajectory_digest(costs) -> int:
    """64-bit BLAKE2b digest of the visited cost sequence (int64 little endian)."""
    data = np.asarray(costs, dtype="<i8").tobytes()
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "big")


class TabuState:
    """Tabu bookkeeping keyed by (location, facility).

    ``tabu_until[loc][fac]`` is the first iteration at which ``fac`` may be
    placed at ``loc`` again. A swap is tabu only if both reassignments it
    makes are; aspiration is applied by the search loop.
    """

    def __init__(self, n: int, tenure_low: int, tenure_high: int, kernels):
        if not 0 < tenure_low <= tenure_high:
            raise ValueError(
                f"need 0 < tenure_low <= tenure_high, got {tenure_low}, {tenure_high}"
            )
        self.tenure_low = tenure_low
        self.tenure_high = tenure_high
        self.current_iter = 0
        self.tabu_until = kernels.zeros_matrix(n)

    def is_tabu(self, perm: Permutation, p: int, q: int, t: int) -> bool:
        return (
            self.tabu_until[p][perm[q]] > t and self.tabu_until[q][perm[p]] > t
        )


@dataclass
class SearchResult:
    best_perm: Permutation
    best_cost: int
    iterations: int
    stats: UpdateStats
    wall_time: float
    trajectory_hash: int
    strategy: str
    seed: int
    initial_cost: int
    final_cost: int
    backend: str = ""
    trajectory: list[int] = field(default_factory=list, repr=False)

    @property
    def time_per_iteration(self) -> float:
        return self.wall_time / self.iterations

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "n": len(self.best_perm),
            "seed": self.seed,
            "strategy": self.strategy,
            "iterations": self.iterations,
            "initial_cost": self.initial_cost,
            "final_cost": self.final_cost,
            "best_cost": self.best_cost,
            "best_perm": list(self.best_perm),
            "trajectory_hash": f"{self.trajectory_hash:016x}",
            "stats": self.stats.as_dict(),
        }
        if timing:
            out["backend"] = self.backend
            out["wall_time"] = self.wall_time
            out["time_per_iteration"] = self.time_per_iteration
        return out


def solve(
    inst: QapInstance,
    seed: int,
    iterations: int,
    strategy: str = "novel",
    tenure_low: int | None = None,
    tenure_high: int | None = None,
    *,
    backend=None,
    check_every: int = 0,
) -> SearchResult:
    """Robust tabu search from a seeded random permutation.

    Each iteration takes the admissible swap with the lowest delta (ties go
    to the first pair in row-major ``i < j`` order). A tabu swap is admitted
    when it would strictly beat the best cost so far; if every swap is tabu
    and none aspires, the lowest-delta swap is taken anyway. Both
    reassignments made by a swap become tabu for a tenure drawn uniformly
    from ``[tenure_low, tenure_high]``.

    ``check_every > 0`` recomputes the objective from scratch every that
    many iterations and raises if the running cost has drifted.
    """
    check_strategy(strategy)
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if inst.n < 2:
        raise ValueError("search needs n >= 2")
    lo, hi = default_tenure(inst.n)
    tenure_low = lo if tenure_low is None else tenure_low
    tenure_high = max(hi, tenure_low) if tenure_high is None else tenure_high

    rng = RngState(seed)
    start = Permutation.random(inst.n, rng)
    table = DeltaTable(inst, start, strategy, backend=backend)
    k = table.kernels
    tabu = TabuState(inst.n, tenure_low, tenure_high, k)
    tenures = k.vector(rng.integers(tenure_low, tenure_high) for _ in range(iterations))
    trajectory = k.zeros(iterations)
    best_perm = k.vector(start.assign)
    initial = objective(inst, start)
    cost = best = initial

    step = check_every if check_every > 0 else iterations
    elapsed = 0
    done = 0
    while done < iterations:
        m = min(step, iterations - done)
        chunk = k.zeros(m)
        t0 = time.perf_counter_ns()
        best, cost = k.search(
            table._d, table._f, table._perm, table._values, tabu.tabu_until,
            tenures[done : done + m], strategy == "novel", cost, best, done,
            table._counters, best_perm, chunk,
        )
        elapsed += time.perf_counter_ns() - t0
        trajectory[done : done + m] = chunk
        done += m
        if check_every > 0:
            actual = objective(inst, table.perm)
            if actual != cost:
                raise RuntimeError(
                    f"running cost {cost} != recomputed {actual} after {done} iterations"
                )
    tabu.current_iter = done

    traj = k.tolist(trajectory)
    best_p = Permutation(k.tolist(best_perm))
    if objective(inst, best_p) != best:
        raise RuntimeError("best cost does not match its permutation")
    return SearchResult(
        best_perm=best_p,
        best_cost=int(best),
        iterations=iterations,
        stats=table.stats,
        wall_time=elapsed / 1e9,
        trajectory_hash=trajectory_digest(traj),
        strategy=strategy,
        seed=seed,
        initial_cost=initial,
        final_cost=int(cost),
        backend=k.NAME,
        trajectory=traj,
    )
