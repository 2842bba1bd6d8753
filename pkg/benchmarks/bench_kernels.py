"""Benchmark the compiled ranking kernels against the NumPy fallback.

Both backends are imported directly, so the timings are unaffected by the
``RANKENV_DISABLE_EXT`` switch. Typical usage::

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 200x2500,1000x500 --repeats 5
"""

import argparse
import timeit

import numpy as np

from rankenv import _ranks_ext, _ranks_np


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", default="50x2500,200x2500,1000x500",
        help="comma-separated SxD problem sizes (curves x grid points)",
    )
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats; the best run is reported")
    parser.add_argument("--seed", type=int, default=0)
    return parser.parse_args(argv)


def best_time(fn, values, repeats):
    return min(timeit.repeat(lambda: fn(values), number=1, repeat=repeats))


def main(argv=None):
    args = parse_args(argv)
    rng = np.random.default_rng(args.seed)
    backends = [("numpy", _ranks_np), ("compiled", _ranks_ext)]
    kernels = ["two_sided_ranks", "cont_ranks"]

    print(f"{'kernel':<16} {'size':<12} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for size in args.sizes.split(","):
        s, d = (int(part) for part in size.lower().split("x"))
        values = rng.standard_normal((s, d))
        for kernel in kernels:
            times = {name: best_time(getattr(mod, kernel), values, args.repeats)
                     for name, mod in backends}
            print(f"{kernel:<16} {f'{s}x{d}':<12} "
                  f"{times['numpy'] * 1e3:>8.2f}ms {times['compiled'] * 1e3:>8.2f}ms "
                  f"{times['numpy'] / times['compiled']:>7.2f}x")

    # sanity: the two implementations must agree on what they computed
    values = rng.standard_normal((100, 400))
    assert np.array_equal(_ranks_np.two_sided_ranks(values),
                          _ranks_ext.two_sided_ranks(values))
    assert np.allclose(_ranks_np.cont_ranks(values),
                       _ranks_ext.cont_ranks(values), rtol=1e-13, atol=0.0)
    print("backends agree on a 100x400 cross-check")


if __name__ == "__main__":
    main()
