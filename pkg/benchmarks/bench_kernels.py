"""Compiled vs numpy partial-norm kernel.

    python3 benchmarks/bench_kernels.py [--rows 200000] [--dims 64] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from smallball import _mc_kernel_py

try:
    from smallball import _mc_kernel
except ImportError:
    _mc_kernel = None


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=200_000)
    ap.add_argument("--dims", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    y = rng.standard_normal((args.rows, args.dims))
    center = rng.standard_normal(args.dims) * 0.1
    inv_w = np.arange(1, args.dims + 1, dtype=float)
    checkpoints = np.array(sorted({1, 2, 4, 8, 16, args.dims} & set(range(1, args.dims + 1))), dtype=np.int64)

    print(f"rows={args.rows} dims={args.dims} checkpoints={checkpoints.tolist()}")
    print(f"{'p':>5} {'numpy [ms]':>12} {'cython [ms]':>12} {'speedup':>8} {'max |diff|':>11}")
    for p in (1.0, 1.5, 2.0):
        def py():
            return _mc_kernel_py.partial_norms_p(y, center, inv_w, p, checkpoints)
        t_py = min(timeit.repeat(py, number=1, repeat=args.repeat)) * 1e3
        if _mc_kernel is None:
            print(f"{p:>5} {t_py:>12.1f} {'(not built)':>12}")
            continue

        def cy():
            return _mc_kernel.partial_norms_p(y, center, inv_w, p, checkpoints)
        t_cy = min(timeit.repeat(cy, number=1, repeat=args.repeat)) * 1e3
        diff = float(np.max(np.abs(py() - cy())))
        print(f"{p:>5} {t_py:>12.1f} {t_cy:>12.1f} {t_py / t_cy:>8.2f} {diff:>11.2e}")


if __name__ == "__main__":
    main()
