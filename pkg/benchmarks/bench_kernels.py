"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]

Prints one row per kernel with the best-of-R wall time for each backend and
the speedup.  Both backends are checked to agree before timing.
"""
import argparse
import timeit

import numpy as np

from tailsmith import _fallback

try:
    from tailsmith import _kernels
except ImportError:
    _kernels = None


def cases(n, rng):
    x = rng.exponential(size=n)
    u = rng.random(n)
    return {
        "ramp_up": lambda m: m.ramp_up(x, 1.0, 0.5),
        "ramp_down": lambda m: m.ramp_down(x, 1.0, 0.5),
        "fold_ramp": lambda m: m.fold_ramp(x, 1.0, 1.0, 0.5),
        "count_event upper": lambda m: m.count_event(x, u, 1.0, 0.5, 0, 0.0),
        "count_event two-sided": lambda m: m.count_event(x, u, 1.0, 0.5, 2, 1.0),
        "count_event no window": lambda m: m.count_event(x, u, 1.0, 0.0, 0, 0.0),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--size", type=int, default=1 << 20)
    p.add_argument("--repeat", type=int, default=7)
    args = p.parse_args()

    rng = np.random.default_rng(0)
    print(f"n = {args.size}, best of {args.repeat}")
    print(f"{'kernel':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, call in cases(args.size, rng).items():
        py = best(lambda: call(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:<24}{py * 1e3:>12.3f}{'-':>12}{'-':>10}")
            continue
        ref, got = call(_fallback), call(_kernels)
        np.testing.assert_allclose(got, ref, rtol=0, atol=1e-15)
        cy = best(lambda: call(_kernels), args.repeat)
        print(f"{name:<24}{py * 1e3:>12.3f}{cy * 1e3:>12.3f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
