"""Classic vs novel strategy benchmark."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import astuple, dataclass, fields

from .instance import QapInstance
from .table import STRATEGIES, UpdateStats
from .tabu import solve


class TrajectoryMismatchError(RuntimeError):
    """Strategies took different paths; a correctness bug, not a timing artefact."""


@dataclass
class BenchRecord:
    instance_name: str
    n: int
    strategy: str
    iterations: int
    total_wall_time: float
    time_per_iteration: float
    full_recomputes: int
    o1_disjoint: int
    o1_overlap: int
    o1_reversal: int
    best_cost: int
    trajectory_hash: str
    seed: int


CSV_COLUMNS = [f.name for f in fields(BenchRecord)]


@dataclass
class BenchSummary:
    speedups: dict[int, float]
    median_speedup: float

    def line(self) -> str:
        per_seed = ", ".join(f"seed {s}: {v:.3f}" for s, v in self.speedups.items())
        return f"median speedup (classic/novel time per iteration): {self.median_speedup:.3f} [{per_seed}]"


def _check_clock():
    info = time.get_clock_info("perf_counter")
    if not info.monotonic:
        raise RuntimeError("no monotonic high-resolution clock available for timing")


def expected_counters(n: int, iterations: int, strategy: str) -> UpdateStats:
    return UpdateStats.per_swap(n, strategy) * iterations


def run_bench(
    inst: QapInstance,
    seeds,
    iterations: int,
    *,
    repeats: int = 1,
    backend=None,
    tenure_low: int | None = None,
    tenure_high: int | None = None,
) -> tuple[list[BenchRecord], BenchSummary]:
    """One record per (seed, strategy). Wall time is the minimum over ``repeats`` runs.

    Both strategies run back to back for each seed and must produce the same
    trajectory hash, otherwise :class:`TrajectoryMismatchError` is raised.
    """
    _check_clock()
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    name = inst.name or f"n{inst.n}"
    records = []
    speedups = {}
    for seed in seeds:
        times = {s: [] for s in STRATEGIES}
        results = {}
        for _ in range(repeats):
            for strategy in STRATEGIES:
                r = solve(
                    inst, seed, iterations, strategy, tenure_low, tenure_high, backend=backend
                )
                times[strategy].append(r.wall_time)
                prev = results.setdefault(strategy, r)
                if prev.trajectory_hash != r.trajectory_hash:
                    raise TrajectoryMismatchError(f"seed {seed}: {strategy} is not repeatable")
        hashes = {s: results[s].trajectory_hash for s in STRATEGIES}
        if len(set(hashes.values())) != 1:
            raise TrajectoryMismatchError(f"seed {seed}: trajectory hashes differ {hashes}")
        for strategy in STRATEGIES:
            r = results[strategy]
            st = r.stats
            want = expected_counters(inst.n, iterations, strategy)
            got = UpdateStats(st.full_recomputes, st.o1_disjoint, st.o1_overlap, st.o1_reversal)
            if got != want:
                raise RuntimeError(f"counter drift for {strategy}: {got} != {want}")
            wall = min(times[strategy])
            records.append(
                BenchRecord(
                    instance_name=name,
                    n=inst.n,
                    strategy=strategy,
                    iterations=iterations,
                    total_wall_time=wall,
                    time_per_iteration=wall / iterations,
                    full_recomputes=st.full_recomputes,
                    o1_disjoint=st.o1_disjoint,
                    o1_overlap=st.o1_overlap,
                    o1_reversal=st.o1_reversal,
                    best_cost=r.best_cost,
                    trajectory_hash=f"{r.trajectory_hash:016x}",
                    seed=seed,
                )
            )
        speedups[seed] = min(times["classic"]) / min(times["novel"])
    summary = BenchSummary(speedups, statistics.median(speedups.values()))
    return records, summary


def to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        row = [f"{v:.9g}" if isinstance(v, float) else v for v in astuple(r)]
        w.writerow(row)
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
