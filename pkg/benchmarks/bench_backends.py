#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the hot kernels on realistic workloads (every candidate family at
n=3, seeded random families at n=4 and n=5) plus a full sweep, and prints a
table with the per-backend times and the speedup ratio. Workloads are fixed
and seeded, so numbers are comparable across runs and machines.

Usage: python benchmarks/bench_backends.py [--quick]
"""

from __future__ import annotations

import argparse
import random
import time

from catbase._kernels import load_backend


def candidate_families(n):
    subsets = (1 << n) - 1
    return [
        tuple(j + 1 for j in range(subsets) if code >> j & 1)
        for code in range(1, 1 << subsets)
    ]


def random_families(n, count, seed):
    rng = random.Random(seed)
    top = 1 << ((1 << n) - 1)
    out = []
    for _ in range(count):
        code = rng.randrange(1, top)
        out.append(tuple(j + 1 for j in range((1 << n) - 1) if code >> j & 1))
    return out


def bench(fn, reps):
    best = None
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def workloads(quick):
    fams3 = candidate_families(3)
    fams4 = random_families(4, 60 if quick else 300, seed=1)
    fams5 = random_families(5, 20 if quick else 100, seed=2)

    def classify(impl, fams, n):
        for masks in fams:
            impl.classify_tables(masks, n)

    def cluster(impl, fams, n):
        for masks in fams:
            impl.cluster_table(masks, n)

    def axioms(impl, fams, n):
        for masks in fams:
            impl.axiom2_scan(masks, n, 10**7, False)

    def topo(impl, fams, n):
        for masks in fams:
            table = impl.cluster_table(masks, n)
            opens = impl.tau_opens(table, n)
            impl.topology_closure_witness(opens)
            fc = impl.nwd_singleton_mask(opens, n)
            impl.topo_baire_table(opens, n, fc)

    return [
        ("classify_tables n=3 x127", lambda impl: classify(impl, fams3, 3)),
        ("classify_tables n=4", lambda impl: classify(impl, fams4, 4)),
        ("classify_tables n=5", lambda impl: classify(impl, fams5, 5)),
        ("cluster_table n=3 x127", lambda impl: cluster(impl, fams3, 3)),
        ("cluster_table n=5", lambda impl: cluster(impl, fams5, 5)),
        ("axiom2_scan n=4", lambda impl: axioms(impl, fams4, 4)),
        ("axiom2_scan n=5", lambda impl: axioms(impl, fams5, 5)),
        ("topology pipeline n=4", lambda impl: topo(impl, fams4, 4)),
    ]


def bench_sweep(backend_name, operators):
    # The sweep picks its backend at import time, so run it in a fresh
    # interpreter with the backend forced.
    import json
    import os
    import subprocess
    import sys

    snippet = (
        "import json\n"
        "from catbase.search import SweepConfig, sweep\n"
        f"rep = sweep(SweepConfig(n=3, random_operators={operators}, seed=11))\n"
        "print(json.dumps(rep.elapsed_s))\n"
    )
    env = dict(os.environ, CATBASE_BACKEND=backend_name)
    proc = subprocess.run(
        [sys.executable, "-c", snippet], env=env, capture_output=True, text=True
    )
    proc.check_returncode()
    return json.loads(proc.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    pure = load_backend("pure")
    try:
        fast = load_backend("c")
    except ImportError:
        fast = None
        print("compiled backend not available; timing the pure backend only\n")

    reps = 2 if args.quick else 3
    rows = []
    for name, work in workloads(args.quick):
        t_pure = bench(lambda: work(pure), reps)
        t_fast = bench(lambda: work(fast), reps) if fast else None
        rows.append((name, t_pure, t_fast))

    ops = 100 if args.quick else 300
    t_pure = bench_sweep("py", ops)
    t_fast = bench_sweep("c", ops) if fast else None
    rows.append((f"sweep n=3 operators={ops}", t_pure, t_fast))

    width = max(len(r[0]) for r in rows) + 2
    header = f"{'workload'.ljust(width)}{'pure':>10}{'compiled':>10}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, t_pure, t_fast in rows:
        if t_fast:
            print(
                f"{name.ljust(width)}{t_pure * 1e3:>8.1f}ms{t_fast * 1e3:>8.1f}ms"
                f"{t_pure / t_fast:>8.1f}x"
            )
        else:
            print(f"{name.ljust(width)}{t_pure * 1e3:>8.1f}ms{'-':>10}{'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
