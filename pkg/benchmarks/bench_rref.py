"""Compare the numba and numpy row-reduction kernels over F_p.

Usage: python3 benchmarks/bench_rref.py [--sizes 32 64 128 256] [--p 3] [--repeat 5]
"""

import argparse
import time

import numpy as np

from cdgforge._kernels import HAVE_NUMBA, rref_modp_numba, rref_modp_numpy


def best_of(fn, a, p, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(a, p)
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    if HAVE_NUMBA:
        rref_modp_numba(np.eye(2, dtype=np.int64), args.p)  # compile outside the timing
    print(f"{'n':>6} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}  agree")
    for n in args.sizes:
        a = rng.integers(0, args.p, size=(n, n + n // 2), dtype=np.int64)
        t_np = best_of(rref_modp_numpy, a, args.p, args.repeat)
        if not HAVE_NUMBA:
            print(f"{n:>6} {1e3 * t_np:>10.2f} {'n/a':>10}")
            continue
        t_nb = best_of(rref_modp_numba, a, args.p, args.repeat)
        r1, p1 = rref_modp_numpy(a, args.p)
        r2, p2 = rref_modp_numba(a, args.p)
        agree = np.array_equal(r1, r2) and list(p1) == list(p2)
        print(f"{n:>6} {1e3 * t_np:>10.2f} {1e3 * t_nb:>10.2f} {t_np / t_nb:>8.1f}  {agree}")


if __name__ == "__main__":
    main()
