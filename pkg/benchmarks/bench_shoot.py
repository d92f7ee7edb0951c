#!/usr/bin/env python3
"""Throughput of the compiled shooting kernel against the Python twin.

The eigenvalue search performs thousands of two-sided integrations per
scan, so the kernel dominates end-to-end runtime.  This script times
identical workloads on both backends and reports the speedup, plus one
full find_level on the active backend for context.

    python benchmarks/bench_shoot.py [--repeat N]
"""

import argparse
import math
import time

from dkp_spectra import _shoot_py
from dkp_spectra import shooting

try:
    from dkp_spectra import _shoot_cy
except ImportError:
    _shoot_cy = None

M, A, G = 938.0, 0.986634902, 0.3422745326720664


def workload(backend, energies, rtol):
    half = 0.5
    lam = 0.5 + math.sqrt(half * half - G * G)
    out = 0.0
    for e in energies:
        eps = math.sqrt(M * M - e * e)
        b1 = G * (A * G - e) / lam
        res = backend.shoot_kernel(0, M, A, G, 0.0, e,
                                   1e-6 / A, 1.0 / eps, 30.0 / eps,
                                   rtol, lam, b1)
        out += res[1] / res[0]
    return out


def timed(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=200,
                        help="number of shots per backend (default 200)")
    args = parser.parse_args()

    energies = [-900.0 + 1790.0 * k / (args.repeat - 1) for k in range(args.repeat)]
    rtol = 1e-9

    print(f"workload: {args.repeat} two-sided shots, local error {rtol:g}")
    t_py = timed(workload, _shoot_py, energies, rtol)
    print(f"  python   backend: {t_py:8.3f} s  ({1e3 * t_py / args.repeat:7.3f} ms/shot)")
    if _shoot_cy is not None:
        t_cy = timed(workload, _shoot_cy, energies, rtol)
        print(f"  compiled backend: {t_cy:8.3f} s  ({1e3 * t_cy / args.repeat:7.3f} ms/shot)")
        print(f"  speedup: {t_py / t_cy:.1f}x")
    else:
        print("  compiled backend: not built")

    from dkp_spectra import NaturalParams, QuantumNumbers, Variant, oracle

    nat = NaturalParams(m=M, a=A, g=G)
    oracle.clear_scan_cache()
    t0 = time.perf_counter()
    e0 = oracle.find_level(Variant.APPROX, nat, QuantumNumbers(0, 0))
    t_full = time.perf_counter() - t0
    print(f"full find_level on '{shooting.BACKEND}' backend: "
          f"{t_full:.2f} s  (E = {e0:.4f} MeV)")


if __name__ == "__main__":
    main()
