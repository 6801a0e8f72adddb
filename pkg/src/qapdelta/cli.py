"""Command line front end: ``qapdelta {gen,solve,bench,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from ._backend import BACKENDS
from .bench import TrajectoryMismatchError, run_bench, to_csv
from .instance import InstanceError, format_qaplib, load_qaplib, random_instance
from .table import STRATEGIES
from .tabu import solve
from .verify import LEVELS, run_verify

SHAPE_FLAGS = {"general": "general", "symmetric": "symmetric_zero_diag"}


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args):
    try:
        return load_qaplib(args.instance, swap_roles=args.swap_matrix_roles)
    except (OSError, InstanceError) as exc:
        raise SystemExit(f"qapdelta: cannot load {args.instance}: {exc}") from None


def cmd_gen(args) -> int:
    inst = random_instance(args.n, args.max_entry, args.seed, SHAPE_FLAGS[args.shape])
    _write(format_qaplib(inst), args.out)
    return 0


def cmd_solve(args) -> int:
    inst = _load(args)
    res = solve(
        inst, args.seed, args.iterations, args.strategy, args.tenure_low, args.tenure_high,
        backend=args.backend, check_every=args.check_every,
    )
    d = {"instance": inst.name, **res.to_dict(timing=args.timing)}
    if args.format == "json":
        text = _dump_json(d)
    else:
        lines = [
            f"instance: {inst.name} (n={inst.n})",
            f"strategy: {res.strategy}  seed: {res.seed}  iterations: {res.iterations}",
            f"best cost: {res.best_cost}",
            f"best permutation: {' '.join(map(str, res.best_perm))}",
            f"trajectory hash: {res.trajectory_hash:016x}",
            "stats: " + ", ".join(f"{k}={v}" for k, v in res.stats.as_dict().items()),
        ]
        if args.timing:
            lines.append(
                f"wall time: {res.wall_time:.6f} s ({res.time_per_iteration * 1e6:.2f} us/iteration,"
                f" {res.backend} kernels)"
            )
        text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return 0


def cmd_bench(args) -> int:
    if args.instance:
        inst = _load(args)
    else:
        inst = random_instance(args.n, args.max_entry, args.instance_seed, SHAPE_FLAGS[args.shape])
    if args.iterations < 10 * inst.n:
        print(
            f"qapdelta: warning: {args.iterations} iterations < 10*n; timings may be unstable",
            file=sys.stderr,
        )
    try:
        records, summary = run_bench(
            inst, args.seeds, args.iterations, repeats=args.repeats, backend=args.backend,
            tenure_low=args.tenure_low, tenure_high=args.tenure_high,
        )
    except TrajectoryMismatchError as exc:
        print(f"qapdelta: FATAL: {exc}", file=sys.stderr)
        return 3
    _write(to_csv(records), args.out)
    print(summary.line(), file=sys.stdout if args.out else sys.stderr)
    return 0


def cmd_verify(args) -> int:
    report = run_verify(args.level, mutate_product=args.mutate_product, backend=args.backend)
    if args.format == "json":
        _write(_dump_json(report.to_dict()), args.out)
    else:
        _write(str(report) + "\n", args.out)
    return 0 if report.passed else 1


def _add_solver_flags(p: argparse.ArgumentParser):
    p.add_argument("--tenure-low", type=int, default=None)
    p.add_argument("--tenure-high", type=int, default=None)
    p.add_argument("--backend", choices=BACKENDS, default=None, help="kernel backend (default: auto)")
    p.add_argument("--swap-matrix-roles", action="store_true",
                   help="read the first QAPLIB matrix as flow and the second as distance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qapdelta", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a random instance in QAPLIB format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-entry", type=int, default=99)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", choices=SHAPE_FLAGS, default="general")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run robust tabu search on a QAPLIB file")
    p.add_argument("instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--strategy", choices=STRATEGIES, default="novel")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock fields (makes output run-dependent)")
    p.add_argument("--check-every", type=int, default=0,
                   help="recompute the objective every K iterations and fail on drift")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="time classic vs novel delta maintenance")
    p.add_argument("instance", nargs="?", default=None,
                   help="QAPLIB file; omit to generate one from --n/--shape/--instance-seed")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--max-entry", type=int, default=99)
    p.add_argument("--instance-seed", type=int, default=0)
    p.add_argument("--shape", choices=SHAPE_FLAGS, default="symmetric")
    p.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--iterations", type=int, default=10000)
    p.add_argument("--repeats", type=int, default=1, help="keep the fastest of K runs")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="run the symbolic and oracle verification suites")
    p.add_argument("--level", choices=sorted(LEVELS), default="fast")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", default=None)
    p.add_argument("--backend", choices=BACKENDS, default=None)
    p.add_argument("--mutate-product", action="store_true",
                   help="self-test: flip the sign of the simplified product; must fail")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
