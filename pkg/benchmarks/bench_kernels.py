"""Benchmark the pure-Python kernel against the compiled one.

Run from the repository root after building the extension:

    python3 benchmarks/bench_kernels.py

Each workload is executed on both backends; outputs are compared for
equality before timings are reported.
"""

from __future__ import annotations

import random
import time
from itertools import combinations_with_replacement

from idxloc._kernel import _pycore
from idxloc.graphs import directed_cycle, expand_indices, graph_from_side_info

try:
    from idxloc._kernel import _fastcore
except ImportError:
    _fastcore = None


def bench(fn, *args, repeat=1):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def workload_rank(backend):
    rng = random.Random(1)
    total = 0
    for _ in range(3000):
        q = rng.choice([2, 3, 5])
        rows, cols = rng.randint(4, 10), rng.randint(4, 10)
        entries = [rng.randrange(q) for _ in range(rows * cols)]
        total += backend.rank_fq(entries, rows, cols, q)
    return total


def workload_scan(backend):
    """Partial encoder scan of the 3-cycle vector problem (m = 2)."""
    g = directed_cycle(3)
    m, ell, q = 2, 4, 2
    mn = m * g.n
    exp = expand_indices(g, m)
    demands = tuple(tuple(sorted(j - 1 for j in exp.demands[i])) for i in range(3))
    side = tuple(tuple(sorted(s - 1 for s in exp.side_info[i])) for i in range(3))
    codes = [c for c in range(1, 2**mn)]
    hits = 0
    for cols in combinations_with_replacement(codes[:24], ell):
        if backend.min_query_sets(cols, mn, q, demands, side, ell) is not None:
            hits += 1
    return hits


def workload_minrank(backend):
    g = graph_from_side_info(
        [{2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 2, 5}, {1, 3, 4}]
    )
    free = tuple(
        tuple(sorted(j - 1 for j in g.side_info(i))) for i in range(1, 6)
    )
    value, _ = backend.minrank_dfs(5, 2, free)
    return value


WORKLOADS = [
    ("rank_fq x3000", workload_rank),
    ("encoder scan", workload_scan),
    ("minrank dfs n=5", workload_minrank),
]


def main():
    if _fastcore is None:
        print("compiled kernel not built; showing pure-Python timings only")
    print(f"{'workload':<18} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in WORKLOADS:
        t_py, r_py = bench(fn, _pycore)
        if _fastcore is None:
            print(f"{name:<18} {t_py:>9.3f}s {'-':>10} {'-':>8}")
            continue
        t_c, r_c = bench(fn, _fastcore)
        if r_py != r_c:
            raise SystemExit(f"backend mismatch on {name}: {r_py} != {r_c}")
        print(f"{name:<18} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
