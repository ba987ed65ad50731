"""Benchmark the compiled scoring kernel against the pure-numpy fallback.

Usage::

    python benchmarks/bench_backends.py [--batch 200000] [--repeats 5]

Times the batch scorer on random finish orders for both meet formats and
scoring modes, then an end-to-end Monte Carlo run through each backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import dualmeet.backend
from dualmeet import MeetFormat, Roster, Runner, UniformTime, simulate_meet
from dualmeet import _purescore

try:
    from dualmeet import _fastscore
except ImportError:
    _fastscore = None

KERNELS = [("pure", _purescore)]
if _fastscore is not None:
    KERNELS.append(("compiled", _fastscore))


def random_labels(rng, m_a, m_b, batch):
    base = np.array([0] * m_a + [1] * m_b, dtype=np.uint8)
    return np.array([rng.permutation(base) for _ in range(batch)])


def best_time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(batch, repeats):
    rng = np.random.default_rng(0)
    print(f"batch scorer, {batch} orders per call (best of {repeats}):")
    header = f"  {'format':<10}{'mode':<16}" + "".join(f"{name:>14}" for name, _ in KERNELS)
    if len(KERNELS) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for m, n in ((6, 4), (7, 5)):
        labels = random_labels(rng, m, m, batch)
        for displacement in (True, False):
            mode = "displacement" if displacement else "no-disp"
            times = [
                best_time(lambda k=kernel: k.score_batch(labels, n, displacement), repeats)
                for _, kernel in KERNELS
            ]
            row = f"  ({m},{n})".ljust(12) + mode.ljust(16)
            row += "".join(f"{batch / t / 1e6:>11.1f} M/s" for t in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)


def bench_simulation(samples, repeats):
    fmt = MeetFormat.symmetric(7, 5, True)
    runners = [Runner("A", f"a{k}", UniformTime(540, 600)) for k in range(7)]
    runners += [Runner("B", f"b{k}", UniformTime(540, 600)) for k in range(7)]
    roster = Roster(tuple(runners))
    print(f"\nend-to-end simulate_meet, (7,5) displacement, {samples} races:")
    for name, kernel in KERNELS:
        dualmeet.backend._impl = kernel  # route the simulation through this kernel
        elapsed = best_time(lambda: simulate_meet(fmt, roster, samples, seed=1), repeats)
        print(f"  {name:<10}{elapsed:8.2f} s   ({samples / elapsed / 1e6:.2f} M races/s)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--batch", type=int, default=200_000)
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    if _fastscore is None:
        print("compiled kernel not available; benchmarking the fallback only\n")
    bench_kernels(args.batch, args.repeats)
    bench_simulation(args.samples, args.repeats)


if __name__ == "__main__":
    main()
