"""Benchmark the compiled amplitude-sum kernel against the numpy fallback.

Run from the repository root:

    python benchmarks/bench_kernels.py [--sizes 10,30,100] [--times 2001,100000]
"""

import argparse
import time

import numpy as np

from qbm_sbs import kernels
from qbm_sbs.model import coupling_constant

OMEGA_BIG = 3.0e8


def make_problem(n_osc, n_times, seed=0):
    rng = np.random.default_rng(seed)
    omega = rng.uniform(3e9, 6e9, n_osc)
    c = coupling_constant(1e-5, 1e-25, 0.33e18)
    pref = c / (2.0 * np.sqrt(2.0 * 1e-25 * omega))
    weight = 1.0 / np.tanh(1.054571817e-34 * omega / (2.0 * 1.380649e-23 * 1e-2))
    times = rng.uniform(0.0, 1e-5, n_times)
    return times, omega, pref, weight


def bench(impl, times, omega, pref, weight, r, repeats=3):
    best = np.inf
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = impl.exponent_series(
            times, omega, pref, weight, OMEGA_BIG, kernels.AXIS_MOMENTUM, r, 0.3, 0.1
        )
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="10,30,100", help="oscillator counts")
    parser.add_argument("--times", default="2001,100000", help="time-sample counts")
    parser.add_argument("--squeeze-r", type=float, default=0.5)
    args = parser.parse_args()

    impls = kernels.backends()
    if "compiled" not in impls:
        print("compiled backend not available; benchmarking the fallback only")

    print(f"{'n_osc':>6} {'n_times':>8}", end="")
    for name in impls:
        print(f" {name + ' [s]':>14}", end="")
    print(f" {'speedup':>8}   max |rel dev|")

    for n_osc in (int(s) for s in args.sizes.split(",")):
        for n_times in (int(s) for s in args.times.split(",")):
            problem = make_problem(n_osc, n_times)
            results = {}
            print(f"{n_osc:>6} {n_times:>8}", end="", flush=True)
            for name, impl in impls.items():
                elapsed, out = bench(impl, *problem, args.squeeze_r)
                results[name] = (elapsed, out)
                print(f" {elapsed:>14.4f}", end="", flush=True)
            if len(results) == 2:
                speedup = results["pure"][0] / results["compiled"][0]
                dev = np.max(
                    np.abs(results["pure"][1] - results["compiled"][1])
                ) / np.max(np.abs(results["pure"][1]))
                print(f" {speedup:>7.1f}x   {dev:.2e}")
            else:
                print()


if __name__ == "__main__":
    main()
