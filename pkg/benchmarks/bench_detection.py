"""Benchmark the detector Monte-Carlo kernels: compiled vs pure numpy.

Times trial_energies on every available backend at a representative
workload, cross-checks that the backends produce matching streams, and
reports throughput in samples per second.

Usage: python3 benchmarks/bench_detection.py [--trials N] [--samples M]
"""

import argparse
import time

import numpy as np

from crnoma import _kernels


def bench(impl, trials: int, m: int, repeats: int) -> tuple:
    # warm up (first call pays allocation and, for numpy, cache effects)
    impl.trial_energies(1, 0, 0, min(trials, 1000), m, 0.5, 0.5)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = impl.trial_energies(1, 1, 0, trials, m, 0.55, 0.5)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--samples", type=int, default=500, help="samples per trial")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    total = args.trials * args.samples
    print(f"workload: {args.trials} trials x {args.samples} samples "
          f"({total / 1e6:.1f} M complex samples), best of {args.repeats}")
    print(f"active backend: {_kernels.BACKEND}")

    results = {}
    for name in _kernels.available_backends():
        impl = _kernels.get_backend(name)
        elapsed, energies = bench(impl, args.trials, args.samples, args.repeats)
        results[name] = (elapsed, energies)
        print(f"{name:>8s}: {elapsed:.3f} s  ({total / elapsed / 1e6:.1f} M samples/s)")

    if len(results) == 2:
        (ea,), (eb,) = [v[1:] for v in results.values()]
        if np.allclose(ea, eb, rtol=1e-12, atol=0.0):
            worst = float(np.max(np.abs(ea - eb) / np.abs(ea)))
            print(f"cross-check: energies agree (max relative gap {worst:.2e})")
        else:
            print("cross-check: BACKEND MISMATCH")
            return 1
        names = list(results)
        speedup = results[names[1]][0] / results[names[0]][0]
        print(f"speedup {names[0]} vs {names[1]}: {speedup:.2f}x")
    else:
        print("only one backend available; no comparison")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
