import pytest

from qapdelta.bench import (
    CSV_COLUMNS,
    TrajectoryMismatchError,
    expected_counters,
    read_csv,
    run_bench,
    to_csv,
)
from qapdelta.instance import random_instance
from qapdelta.table import UpdateStats


def test_csv_column_order_is_fixed():
    assert CSV_COLUMNS == [
        "instance_name", "n", "strategy", "iterations", "total_wall_time", "time_per_iteration",
        "full_recomputes", "o1_disjoint", "o1_overlap", "o1_reversal", "best_cost",
        "trajectory_hash", "seed",
    ]


def test_run_bench_records_and_counters(backend):
    inst = random_instance(12, 99, 0, "symmetric_zero_diag")
    records, summary = run_bench(inst, [1, 2], 150, repeats=2, backend=backend)
    assert [(r.seed, r.strategy) for r in records] == [
        (1, "classic"), (1, "novel"), (2, "classic"), (2, "novel"),
    ]
    for r in records:
        want = expected_counters(12, 150, r.strategy)
        assert (r.full_recomputes, r.o1_disjoint, r.o1_overlap, r.o1_reversal) == want.as_tuple()[:4]
        assert r.time_per_iteration == pytest.approx(r.total_wall_time / 150)
    assert records[0].trajectory_hash == records[1].trajectory_hash
    assert records[0].best_cost == records[1].best_cost
    assert set(summary.speedups) == {1, 2} and summary.median_speedup > 0
    assert "median speedup" in summary.line()


def test_expected_counters_n100():
    assert expected_counters(100, 10, "classic") == UpdateStats(1960, 47530, 0, 10)
    assert expected_counters(100, 10, "novel") == UpdateStats(980, 47530, 980, 10)


def test_csv_round_trip():
    inst = random_instance(6, 9, 1)
    records, _ = run_bench(inst, [3], 40)
    text = to_csv(records)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    rows = read_csv(text)
    assert len(rows) == 2
    assert rows[1]["strategy"] == "novel" and int(rows[1]["o1_overlap"]) == 4 * 40
    assert rows[0]["trajectory_hash"] == f"{int(rows[0]['trajectory_hash'], 16):016x}"


def test_mismatch_is_fatal(monkeypatch):
    import qapdelta.bench as bench

    real = bench.solve

    def skewed(inst, seed, iterations, strategy, *a, **kw):
        return real(inst, seed + (strategy == "novel"), iterations, strategy, *a, **kw)

    monkeypatch.setattr(bench, "solve", skewed)
    with pytest.raises(TrajectoryMismatchError):
        run_bench(random_instance(8, 99, 1), [1], 50)


def test_repeats_validated():
    with pytest.raises(ValueError):
        run_bench(random_instance(4, 9, 1), [1], 10, repeats=0)
