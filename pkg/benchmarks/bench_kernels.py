"""Compare the numba and pure-numpy kernels for RREF and matmul over GF(p).

    python3 benchmarks/bench_kernels.py [--sizes 16 64 128] [--repeat 5]

Both kernels are called directly, so the timing does not depend on
NCSPACES_DISABLE_NUMBA; outputs are checked equal before timing.
"""

import argparse
import time

import numpy as np

from ncspaces.linalg import _kernels as K


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 128, 256])
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 32003])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not K.NUMBA_AVAILABLE:
        print("numba is not importable; only the numpy kernels can run")
        return
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':8} {'p':>6} {'n':>5} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for p in args.primes:
        for n in args.sizes:
            a = rng.integers(0, p, size=(n, n), dtype=np.int64)
            b = rng.integers(0, p, size=(n, n), dtype=np.int64)
            for name, fast, slow, xs in (
                ("rref", K.rref_modp_numba, K.rref_modp_numpy, (a,)),
                ("matmul", K.matmul_modp_numba, K.matmul_modp_numpy, (a, b)),
            ):
                c1, c2 = [x.copy() for x in xs], [x.copy() for x in xs]
                r1, r2 = fast(*c1, p), slow(*c2, p)
                if name == "rref":  # reduces in place; compare the reduced matrices too
                    same = r1[0] == r2[0] and np.array_equal(r1[1], r2[1]) and np.array_equal(c1[0], c2[0])
                else:
                    same = np.array_equal(r1, r2)
                assert same, f"{name} kernels disagree at p={p}, n={n}"
                tf = best_of(lambda: fast(*(x.copy() for x in xs), p), args.repeat)
                ts = best_of(lambda: slow(*(x.copy() for x in xs), p), args.repeat)
                print(f"{name:8} {p:>6} {n:>5} {tf * 1e3:>10.3f} {ts * 1e3:>10.3f} {ts / tf:>8.1f}x")


if __name__ == "__main__":
    main()
