#!/usr/bin/env python3
"""Benchmark the compiled enumeration kernels against the NumPy fallback.

Run:  python benchmarks/bench_kernels.py [--repeats 3] [--heavy]

Times the three hot kernels (least-prime-factor sieve, triple T-value
counting, triple residue histogram) on both backends and prints a table
with the speedup.  Results are asserted equal before timing, so the
numbers always compare identical work.
"""

import argparse
import time

import numpy as np

from cubewaring import kernels


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--heavy", action="store_true", help="larger problem sizes")
    args = ap.parse_args()

    py = kernels.get_backend("python")
    try:
        cy = kernels.get_backend("cython")
    except ImportError:
        print("compiled backend not built; run pip install -e . first")
        return

    if args.heavy:
        cases = [
            ("lpf_sieve(2*10^7)", lambda b: b.lpf_sieve(2 * 10**7)),
            ("t_value_counts(P=220)", lambda b: b.t_value_counts(220)),
            ("t_mod_hist(q=220)", lambda b: b.t_mod_hist(220)),
        ]
    else:
        cases = [
            ("lpf_sieve(3*10^6)", lambda b: b.lpf_sieve(3 * 10**6)),
            ("t_value_counts(P=120)", lambda b: b.t_value_counts(120)),
            ("t_mod_hist(q=120)", lambda b: b.t_mod_hist(120)),
        ]

    print(f"{'kernel':28s} {'python':>10s} {'cython':>10s} {'speedup':>9s}")
    for name, call in cases:
        a = call(py)
        b = call(cy)
        assert np.array_equal(a, b), f"backend outputs differ for {name}"
        tp = best_of(lambda: call(py), args.repeats)
        tc = best_of(lambda: call(cy), args.repeats)
        print(f"{name:28s} {tp*1e3:9.1f}ms {tc*1e3:9.1f}ms {tp/tc:8.2f}x")


if __name__ == "__main__":
    main()
