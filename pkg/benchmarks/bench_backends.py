"""Compiled vs pure-Python kernels on the same search.

    python benchmarks/bench_backends.py --n 60 --iterations 300

Both backends must walk the identical trajectory; the script exits with
status 1 if they do not.
"""

import argparse
import sys

from qapdelta import compiled_available, random_instance, solve


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--iterations", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--shape", default="symmetric_zero_diag")
    args = ap.parse_args(argv)
    if not compiled_available():
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 2

    inst = random_instance(args.n, 99, 0, args.shape)
    print(f"n={args.n} iterations={args.iterations} seed={args.seed} (best of {args.repeats})")
    print(f"{'strategy':<9}{'python us/it':>15}{'compiled us/it':>16}{'ratio':>9}")
    hashes = set()
    for strategy in ("classic", "novel"):
        per = {}
        for backend in ("python", "compiled"):
            runs = [solve(inst, args.seed, args.iterations, strategy, backend=backend)
                    for _ in range(args.repeats)]
            hashes.update(r.trajectory_hash for r in runs)
            per[backend] = min(r.time_per_iteration for r in runs) * 1e6
        print(f"{strategy:<9}{per['python']:>15.1f}{per['compiled']:>16.2f}"
              f"{per['python'] / per['compiled']:>9.1f}")
    if len(hashes) != 1:
        print("trajectories differ between backends", file=sys.stderr)
        return 1
    print(f"trajectory hash {hashes.pop():016x} identical across backends and strategies")
    return 0


if __name__ == "__main__":
    sys.exit(main())
