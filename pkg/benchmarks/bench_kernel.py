#!/usr/bin/env python3
"""Benchmark the compiled census kernel against the numpy fallback.

Runs the same index ranges through both backends, checks the tallies
agree, and prints throughput in matrices per second.

    python benchmarks/bench_kernel.py [--quick]
"""

import argparse
import time

import numpy as np

from fcensus import _kernel_py
from fcensus.fields import make_field

try:
    from fcensus import _censuskernel
except ImportError:
    _censuskernel = None


def run_backend(kernel, p, e, n, chunk=1 << 16):
    field = make_field(p, e)
    q = field.q
    mul, add, frob = field.dense_tables()
    total = q ** (n * n)
    x = xinf = 0
    t0 = time.perf_counter()
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        members = np.empty(stop - start, dtype=np.int64)
        flags = np.empty(stop - start, dtype=np.int8)
        xc, xic, _ = kernel.count_commuting_range(
            start, stop, n, q, e, mul, add, frob, members, flags
        )
        x += xc
        xinf += xic
        start = stop
    return x, xinf, total, time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="small cases only")
    args = parser.parse_args()

    cases = [(2, 3, 2), (3, 2, 2), (2, 2, 3)]
    if not args.quick:
        cases += [(2, 5, 2), (3, 3, 2)]

    backends = [("pure", _kernel_py)]
    if _censuskernel is not None:
        backends.insert(0, ("compiled", _censuskernel))
    else:
        print("compiled kernel not built; benchmarking the fallback alone")

    print(f"{'case':>14} {'backend':>9} {'matrices':>12} {'X':>8} {'time':>9} {'rate':>14}")
    for p, e, n in cases:
        results = {}
        for name, kernel in backends:
            x, xinf, total, dt = run_backend(kernel, p, e, n)
            results[name] = (x, xinf, dt)
            rate = total / dt if dt else float("inf")
            print(
                f"  q={p**e:<4} n={n:<2} {name:>9} {total:>12} {x:>8} "
                f"{dt:>8.3f}s {rate:>11.2e}/s"
            )
        if len(results) == 2:
            (xc, xic, tc), (xp, xip, tp) = results["compiled"], results["pure"]
            if (xc, xic) != (xp, xip):
                raise SystemExit("backend tallies disagree!")
            print(f"{'':>14} {'agree':>9} {'speedup':>12} {tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
