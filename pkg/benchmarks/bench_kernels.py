"""Compare the numba and numpy kernel backends on point counting and prime sums.

Run:  python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from motent import kernels
from motent.ffcount import FqVarietyDef, _affine_count

CASES = [
    ("y^2 = x^3 + x over F_(5^8)", FqVarietyDef.from_text("q=5 kind=affine vars=x,y\ny^2 - x^3 - x\n"), 8),
    ("xy = 1 times A^1 over F_(2^8)", FqVarietyDef.from_text("q=2 kind=affine vars=x,y,z\nx*y - 1\n"), 8),
    ("y^2 = x^3 + x over F_(3^6), brute", FqVarietyDef.from_text("q=3 kind=affine vars=x,y\ny^2 - x^3 - x\n"), 6),
]


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pmax", type=int, default=10**6)
    args = ap.parse_args()
    names = list(kernels.backends())
    print(f"backends: {', '.join(names)} (default {kernels.BACKEND})")

    # first call compiles; keep it out of the timings
    for name in names:
        _affine_count(CASES[0][1], 1, "fibers", name)
        kernels.get(name).dirichlet_sums(kernels.get(name).prime_sieve(100), np.array([1.0]), 2.0, 5)

    print(f"{'case':40s}" + "".join(f"{n:>12s}" for n in names))
    for label, X, m in CASES:
        method = "brute" if "brute" in label else "fibers"
        row, results = [], set()
        for name in names:
            res, dt = best_of(lambda: _affine_count(X, m, method, name), args.repeat)
            results.add(res)
            row.append(dt)
        assert len(results) == 1, f"backends disagree on {label}: {results}"
        print(f"{label:40s}" + "".join(f"{dt:11.3f}s" for dt in row))

    row, sums = [], []
    for name in names:
        impl = kernels.get(name)
        (res, dt) = best_of(lambda: impl.dirichlet_sums(impl.prime_sieve(args.pmax), np.array([1.0]), 2.0, 60), args.repeat)
        sums.append(res)
        row.append(dt)
    print(f"{f'point entropy sums, pmax={args.pmax}':40s}" + "".join(f"{dt:11.3f}s" for dt in row))
    spread = max(abs(a[0] - b[0]) + abs(a[1] - b[1]) for a in sums for b in sums)
    print(f"max float difference between backends: {spread:.2e}")


if __name__ == "__main__":
    main()
