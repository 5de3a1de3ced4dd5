"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Two workloads: dense fraction-free rref of random integer matrices, and the
sparse incremental echelon behind ``ideal_slice`` on the preset operads.
"""

import argparse
import random
import statistics
import time

from operadkit import kernels
from operadkit.presets import preset
from operadkit.quotient import clear_cache, ideal_slice


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def dense_case(size, seed=0):
    rng = random.Random(seed)
    rows = [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)]
    return lambda mod: mod.rref_int(rows, size)


def sparse_echelon_case(n_rows, n_cols, density, seed=0):
    rng = random.Random(seed)
    rows = []
    for _ in range(n_rows):
        row = {c: rng.choice([-2, -1, 1, 2]) for c in range(n_cols) if rng.random() < density}
        rows.append(row)

    def run(mod):
        piv = {}
        for r in rows:
            mod.echelon_insert(piv, dict(r))
    return run


def slice_case(name, n):
    def run(_mod):
        clear_cache()
        ideal_slice(preset(name), n)
    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller sizes (smoke test)")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the pure-Python kernels are timed")
    sizes = (20, 40) if args.quick else (40, 80, 120)
    cases = [(f"rref dense {s}x{s}", dense_case(s)) for s in sizes]
    rows, cols = (200, 60) if args.quick else (600, 150)
    cases.append((f"echelon sparse {rows}x{cols}", sparse_echelon_case(rows, cols, 0.05)))
    slices = [("lie", 4), ("comm", 4)] if args.quick else [("lie", 4), ("poisson", 4), ("comm", 5)]
    cases += [(f"ideal_slice {name} n={n}", slice_case(name, n)) for name, n in slices]

    names = sorted(backends)
    header = f"{'workload':32s}" + "".join(f"{b + ' (s)':>14s}" for b in names)
    if len(names) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    results = {}
    for label, case in cases:
        line = f"{label:32s}"
        best = {}
        for b in names:
            prev = kernels.use_backend(b)
            try:
                best[b], _ = best_of(lambda: case(backends[b]), args.repeat)
            finally:
                kernels.use_backend(prev)
            line += f"{best[b]:14.4f}"
        if len(names) == 2:
            line += f"{best['python'] / best['cython']:9.2f}x"
        results[label] = best
        print(line)
    clear_cache()
    return results


if __name__ == "__main__":
    main()
