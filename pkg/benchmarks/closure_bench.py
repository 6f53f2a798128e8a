#!/usr/bin/env python3
"""Benchmark the compiled closure kernel against the pure-Python fallback.

Both engines run identical breadth-first closures; orders must agree exactly.
Usage: python benchmarks/closure_bench.py [--quick]
"""

import argparse
import sys
import time

from arithgroups import closure
from arithgroups.closure_py import bfs_closure_py

CASES = [
    ("SL2(Z/31)  transvections", [(1, 1, 0, 1), (1, 0, 1, 1)], 2, 31),
    ("SL2(Z/48)  transvections", [(1, 1, 0, 1), (1, 0, 1, 1)], 2, 48),
    ("SL2(Z/121) transvections", [(1, 1, 0, 1), (1, 0, 1, 1)], 2, 121),
    ("Sanov mod 125",            [(1, 2, 0, 1), (1, 0, 2, 1)], 2, 125),
    ("SL3(F_7)   transvections", [
        (1, 1, 0, 0, 1, 0, 0, 0, 1),
        (1, 0, 0, 0, 1, 1, 0, 0, 1),
        (1, 0, 1, 0, 1, 0, 0, 0, 1),
        (1, 0, 0, 1, 1, 0, 0, 0, 1),
        (1, 0, 0, 0, 1, 0, 1, 0, 1),
        (1, 0, 0, 0, 1, 0, 0, 1, 1),
    ], 3, 7),
]

QUICK_CASES = CASES[:2]


def run(fn, gens, n, m):
    t0 = time.perf_counter()
    order, truncated, _ = fn(list(gens), n, m, 10 ** 8, False)
    return order, truncated, time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="small cases only")
    args = parser.parse_args()

    if closure._native is None:
        print("compiled kernel not available; build with pip install -e .")
        sys.exit(1)

    cases = QUICK_CASES if args.quick else CASES
    header = f"{'case':<28} {'order':>10} {'native':>9} {'python':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, gens, n, m in cases:
        order_n, trunc_n, t_native = run(closure._native, gens, n, m)
        order_p, trunc_p, t_python = run(bfs_closure_py, gens, n, m)
        assert (order_n, trunc_n) == (order_p, trunc_p), "backends disagree!"
        print(f"{name:<28} {order_n:>10} {t_native:>8.3f}s {t_python:>8.3f}s "
              f"{t_python / t_native:>7.1f}x")


if __name__ == "__main__":
    main()
