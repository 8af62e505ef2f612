"""Benchmark the pure Python and compiled sweep kernels against each
other on identical seed windows.

Usage: python3 benchmarks/bench_kernels.py [--pair M N] [--window SEEDS]

The two implementations must return identical tallies on the shared
window; the script asserts that before reporting rates, so a silent
divergence can never hide behind a speed number.
"""

import argparse
import time

from dpx import _sweep_py, kernels
from dpx.oracle import _factor_tables, _flat


def _args(m, n):
    H, K = _factor_tables(m, n)
    return 2 * n, 2 * m, _flat(H.table), _flat(K.table), 1, n, 1, m


def _time_sweep(mod, args, start, stop):
    t0 = time.perf_counter()
    out = mod.sweep_range(*args, start, stop)
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pair", nargs=2, type=int, default=(3, 3),
                    metavar=("M", "N"))
    ap.add_argument("--window", type=int, default=200000,
                    help="seeds for the head-to-head window")
    ns = ap.parse_args()
    m, n = ns.pair
    args = _args(m, n)
    total = (4 * m * n) ** 4
    window = min(ns.window, total)

    print(f"pair (m, n) = ({m}, {n}); seed space {total}")
    dt_py, out_py = _time_sweep(_sweep_py, args, 0, window)
    print(f"pure python : {window} seeds in {dt_py:8.3f}s "
          f"({window / dt_py:12,.0f} seeds/s)")

    if not kernels.COMPILED:
        print("compiled kernel not available; nothing to compare")
        return

    from dpx import _sweep

    dt_c, out_c = _time_sweep(_sweep, args, 0, window)
    assert out_c == out_py, "kernels disagree on the shared window"
    print(f"compiled    : {window} seeds in {dt_c:8.3f}s "
          f"({window / dt_c:12,.0f} seeds/s)")
    print(f"speedup     : {dt_py / dt_c:.1f}x (identical tallies)")

    if total <= 2 * 10**8:
        t0 = time.perf_counter()
        conflict, stalled, axiom, accepted = _sweep.sweep_range(
            *args, 0, total)
        dt = time.perf_counter() - t0
        print(f"full sweep  : {total} seeds in {dt:8.3f}s "
              f"({total / dt:12,.0f} seeds/s); "
              f"{len(accepted)} accepted, {conflict} conflict, "
              f"{stalled} stalled, {axiom} axiom-rejected")


if __name__ == "__main__":
    main()
