#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot kernels on representative workloads and checks that both
backends agree numerically.

Usage:
    python benchmarks/bench_accel.py
    python benchmarks/bench_accel.py --repeats 9 --json results.json
"""

import argparse
import json
import time

import numpy as np

from ballslep._accel import _impl_numba, _impl_numpy


def best_of(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(rng):
    x = rng.uniform(-1.0, 1.0, size=20_000)
    u = rng.uniform(-1.0, 1.0, size=5_000)
    nr, npol, naz, dim = 90, 160, 40, 1500
    rad = rng.standard_normal((nr, nr))
    pol = rng.standard_normal((npol, npol))
    az = rng.standard_normal((naz, naz))
    ridx = rng.integers(0, nr, size=dim)
    pidx = rng.integers(0, npol, size=dim)
    aidx = rng.integers(0, naz, size=dim)
    return [
        ("jacobi_table (n=60, 20k pts)", "jacobi_table", (60, 2.0, 1.0, x)),
        ("assoc_legendre_table (j=30, 5k pts)", "assoc_legendre_table", (30, u)),
        ("gram_combine (dim 1500)", "gram_combine", (rad, pol, az, ridx, pidx, aidx)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--json", help="write results to this JSON file")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    rows = []
    print(f"{'kernel':38s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for label, name, wargs in workloads(rng):
        fn_nb = getattr(_impl_numba, name)
        fn_np = getattr(_impl_numpy, name)
        # warm up the jit compilation before timing
        out_nb = fn_nb(*wargs)
        out_np = fn_np(*wargs)
        diff = float(np.max(np.abs(np.asarray(out_nb) - np.asarray(out_np))))
        assert diff < 1e-11, f"{name}: backends disagree by {diff:.2e}"
        t_nb = best_of(fn_nb, wargs, args.repeats)
        t_np = best_of(fn_np, wargs, args.repeats)
        rows.append({"kernel": label, "numba_s": t_nb, "numpy_s": t_np, "speedup": t_np / t_nb, "max_diff": diff})
        print(f"{label:38s} {t_nb * 1e3:8.2f}ms {t_np * 1e3:8.2f}ms {t_np / t_nb:7.2f}x")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
        print(f"wrote {args.json}")


if __name__ == "__main__":
    main()
