#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 10000,100000,1000000]

Times the three analysis hot loops (zero-order-hold resampling, the
cumulative-sum regression, Pearson correlation) on synthetic rating series
at each size and prints one table row per (kernel, size).
"""

from __future__ import annotations

import argparse
import random
import time
from array import array

from corae._kernels import pyimpl

try:
    from corae._kernels import _native as native
except ImportError:
    native = None


def make_series(rng: random.Random, n: int) -> list[float]:
    value = 0
    out = []
    for _ in range(n):
        value = max(-7, min(7, value + rng.choice((-1, 0, 0, 1))))
        out.append(float(value))
    return out


def make_events(rng: random.Random, duration: float) -> tuple[list[float], list[float]]:
    times, values, t = [0.0], [0.0], 0.0
    while t < duration:
        t += rng.uniform(0.05, 0.8)
        times.append(t)
        values.append(float(rng.randint(-7, 7)))
    return times, values


def bench(fn, *args, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10000,100000,1000000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if native is None:
        print("note: compiled extension not built; timing the fallback only\n")

    rng = random.Random(1)
    rows = []
    for n in sizes:
        series = make_series(rng, n)
        series_d = array("d", series)
        duration = n * 0.1
        times, values = make_events(rng, min(duration, 4000.0))
        times_d, values_d = array("d", times), array("d", values)
        x, y = make_series(rng, n), make_series(rng, n)
        x_d, y_d = array("d", x), array("d", y)

        cases = [
            ("cumsum_ols", (series,), (series_d,)),
            ("zoh_resample", (times, values, 0.1, duration, 0.0),
             (times_d, values_d, 0.1, duration, 0.0)),
            ("pearson", (x, y), (x_d, y_d)),
        ]
        for name, py_args, native_args in cases:
            t_py = bench(getattr(pyimpl, name), *py_args)
            if native is not None:
                t_native = bench(getattr(native, name), *native_args)
                rows.append((name, n, t_py, t_native, t_py / t_native))
            else:
                rows.append((name, n, t_py, None, None))

    header = f"{'kernel':<14} {'n':>9} {'python (s)':>12} {'native (s)':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, n, t_py, t_native, speedup in rows:
        if t_native is None:
            print(f"{name:<14} {n:>9} {t_py:>12.5f} {'-':>12} {'-':>8}")
        else:
            print(f"{name:<14} {n:>9} {t_py:>12.5f} {t_native:>12.5f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
