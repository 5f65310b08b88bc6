"""Time the compiled and pure-Python ideal-counting kernels on the same
pyramid posets and check that they agree.

    python benchmarks/bench_enum.py [--sizes 14 18 22] [--repeat 3]
"""

import argparse
import time

from ncdt.poset import BACKENDS, count_ideals
from ncdt.pyramid import pyramid_poset


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[14, 18, 22])
    ap.add_argument("--length", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"backends available: {', '.join(BACKENDS)}")
    print(f"{'N':>4} {'ideals':>12} " + " ".join(f"{b:>10}" for b in BACKENDS) + "    speedup")
    for N in args.sizes:
        poset = pyramid_poset(args.length, N)
        times, results = {}, {}
        for b in BACKENDS:
            times[b], results[b] = best_of(lambda: count_ideals(poset, N, backend=b), args.repeat)
        if len(set(map(lambda r: tuple(sorted(r.items())), results.values()))) != 1:
            raise SystemExit(f"backends disagree at N={N}")
        total = sum(next(iter(results.values())).values())
        cols = " ".join(f"{times[b]:>9.4f}s" for b in BACKENDS)
        speed = f"{times['python'] / times['cython']:>9.1f}x" if "cython" in times else "       n/a"
        print(f"{N:>4} {total:>12} {cols} {speed}")


if __name__ == "__main__":
    main()
