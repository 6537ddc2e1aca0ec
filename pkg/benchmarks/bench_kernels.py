#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--size HxW] [--repeats N]
"""

import argparse
import time

import numpy as np

from platetrace import _kernels_py

try:
    from platetrace import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", default="480x960")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    h, w = (int(v) for v in args.size.split("x"))

    rng = np.random.default_rng(0)
    gray = rng.random((h, w))
    binary = (rng.random((h, w)) < 0.4).astype(np.uint8)

    cases = [
        ("median_filter r=1", lambda m: m.median_filter(gray, 1)),
        ("box_filter 20x20", lambda m: m.box_filter(gray, 20)),
        ("sobel_magnitude", lambda m: m.sobel_magnitude(gray)),
        ("label 8-conn", lambda m: m.label_components(binary, 8)),
        ("label 4-conn", lambda m: m.label_components(binary, 4)),
    ]

    print(f"raster {h}x{w}, best of {args.repeats}")
    header = f"{'kernel':<20}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_py = best_of(lambda: call(_kernels_py), args.repeats)
        if _kernels is None:
            print(f"{name:<20}{t_py * 1e3:>10.1f}ms{'n/a':>12}{'n/a':>10}")
            continue
        t_c = best_of(lambda: call(_kernels), args.repeats)
        print(f"{name:<20}{t_py * 1e3:>10.1f}ms{t_c * 1e3:>10.1f}ms{t_py / t_c:>9.1f}x")
    if _kernels is None:
        print("(compiled extension not available; showing fallback only)")


if __name__ == "__main__":
    main()
