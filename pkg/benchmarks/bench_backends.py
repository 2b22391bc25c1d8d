#!/usr/bin/env python3
"""Compare the compiled phase-sum kernel against the numpy fallback.

Kernel timings run in-process (both implementations import side by side);
the optional end-to-end sweep comparison re-runs this script in a
subprocess with SPINPAIR_BACKEND forced, because the library binds its
kernel once at import time.

Usage:
    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --end-to-end
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from spinpair import _core_py
from spinpair.backend import available_backends

try:
    from spinpair import _core
except ImportError:
    _core = None

SIZES = (500, 5_000, 50_000, 500_000)
COLUMNS = 4
DISTS = 3


def best_of(fn, repeat=5):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_table():
    rng = np.random.default_rng(1)
    print(f"kernel: out[d, m] = sum_j exp(i k_j dist_d) w[j, m]   "
          f"(nd={DISTS}, nw={COLUMNS})")
    header = f"{'states':>9} {'numpy [ms]':>12} {'compiled [ms]':>14} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for ns in SIZES:
        k = rng.uniform(-np.pi, np.pi, ns)
        dists = rng.uniform(-50, 50, DISTS)
        w = rng.normal(size=(ns, COLUMNS)) + 1j * rng.normal(size=(ns, COLUMNS))
        t_py = best_of(lambda: _core_py.weighted_phase_sums(k, dists, w))
        if _core is None:
            print(f"{ns:>9} {t_py * 1e3:>12.3f} {'n/a':>14} {'n/a':>8}")
            continue
        t_c = best_of(lambda: _core.weighted_phase_sums(k, dists, w))
        dev = np.max(
            np.abs(
                _core.weighted_phase_sums(k, dists, w)
                - _core_py.weighted_phase_sums(k, dists, w)
            )
        )
        print(
            f"{ns:>9} {t_py * 1e3:>12.3f} {t_c * 1e3:>14.3f} "
            f"{t_py / t_c:>7.2f}x   (max dev {dev:.1e})"
        )


def timed_sweep():
    from spinpair.backend import backend_name
    from spinpair.sweeps import sweep_distance
    from spinpair.model import ModelParams

    t0 = time.perf_counter()
    result = sweep_distance(
        ModelParams(B=0.4, lam=1.0, M=500),
        [0.1, 0.2, 0.3, 0.4, 0.5, 0.6],
        r_max=250,
    )
    return backend_name(), time.perf_counter() - t0, len(result.rows)


def end_to_end():
    print("\nend-to-end: sweep-r, M=500, six fillings, R = 0..250")
    for backend in available_backends():
        env = dict(os.environ, SPINPAIR_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, __file__, "--timed-sweep-json"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        name, elapsed, rows = json.loads(out.stdout)
        print(f"  {name:>8}: {elapsed:.2f}s for {rows} rows")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--end-to-end", action="store_true",
                        help="also time a full sweep under each backend")
    parser.add_argument("--timed-sweep-json", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.timed_sweep_json:
        print(json.dumps(timed_sweep()))
        return
    kernel_table()
    if args.end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
