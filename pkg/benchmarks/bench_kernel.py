"""Compiled vs pure-Python increasing-chord kernels.

    python3 benchmarks/bench_kernel.py [--repeat N]

Times the raw path check on long chains and an end-to-end spanning tree search
on reduction drawings, once per backend.
"""
import argparse
import random
import statistics
import time
from array import array

from icchord import _kernel_py, kernel
from icchord.cnf import CnfInstance
from icchord.reduction import build_gamma
from icchord.roundtrip import sampled_instances
from icchord.search import find_ic_rooted_spanning_tree


def _best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def _chain(n, seed):
    rng = random.Random(seed)
    xs, ys, x, y = [], [], 0, 0
    for _ in range(n):
        x += rng.randint(1, 50)
        y += rng.randint(1, 50)
        xs.append(x)
        ys.append(y)
    return xs, ys


def bench_path_check(repeat):
    xs, ys = _chain(400, 1)
    rows = [("python", lambda: _kernel_py.path_ok(xs, ys, len(xs)))]
    if kernel.HAVE_COMPILED:
        from icchord import _kernel

        bx, by = array("q", xs), array("q", ys)
        rows.append(("compiled", lambda: _kernel.path_ok(bx, by, len(xs))))
    return [(name, *_best_of(fn, repeat)) for name, fn in rows]


def _tree_search(instances, prefer_compiled):
    def run():
        for inst in instances:
            gamma, _ = build_gamma(inst)
            # pin the backend before the search touches the cached scaling
            gamma.__dict__["scaled"] = kernel.ScaledPoints(gamma.vertices, prefer_compiled=prefer_compiled)
            find_ic_rooted_spanning_tree(gamma, gamma.vertex("root"))

    return run


def bench_tree_search(repeat):
    instances = sampled_instances(3, 3, 20, seed=5) + [CnfInstance.from_ints(3, [[1, 2, 3]] * 3)]
    rows = [("python", _tree_search(instances, False))]
    if kernel.HAVE_COMPILED:
        rows.append(("compiled", _tree_search(instances, True)))
    return [(name, *_best_of(fn, repeat)) for name, fn in rows]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernel.HAVE_COMPILED:
        print("compiled kernel unavailable; timing the fallback only")
    for title, rows in (
        ("path check, 400-vertex chain", bench_path_check(args.repeat)),
        ("tree search, 21 reduction drawings", bench_tree_search(args.repeat)),
    ):
        print(title)
        base = rows[0][1]
        for name, best, median in rows:
            print(f"  {name:9s} best {best * 1e3:9.3f} ms  median {median * 1e3:9.3f} ms  speedup x{base / best:6.2f}")


if __name__ == "__main__":
    main()
