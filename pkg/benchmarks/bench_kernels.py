"""Compiled kernels vs the numpy fallback on typical grid sizes.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints the best wall time per call for each kernel and backend and checks
that both backends return identical results.
"""
import argparse
import timeit

import numpy as np

from circline_lab import _fallback
from circline_lab.curves import fourier_random

try:
    from circline_lab import _kernels
except ImportError:
    _kernels = None


def cases():
    curve = fourier_random(6, 0.3, 11)
    poly = np.ascontiguousarray(curve.grid_points)
    rng = np.random.default_rng(0)
    lo, hi = curve.bounding_box
    pts = np.ascontiguousarray(rng.uniform(lo, hi, size=(2000, 2)))
    gon = np.ascontiguousarray(curve.eval(np.linspace(0, 2 * np.pi, 4096, endpoint=False)))
    return [
        ("winding_numbers 1536-gon x 2000 pts", "winding_numbers", (poly, pts)),
        ("polygon_crossings 4096-gon", "polygon_crossings", (gon,)),
        ("nearest_sample 1536 samples x 2000 pts", "nearest_sample", (poly, pts)),
    ]


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b) or np.allclose(a, b, rtol=0, atol=1e-15)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':42s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for label, name, inputs in cases():
        py = getattr(_fallback, name)
        t_py = min(timeit.repeat(lambda: py(*inputs), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{label:42s} {1e3 * t_py:12.2f} {'-':>14s} {'-':>8s}")
            continue
        cy = getattr(_kernels, name)
        if not same(py(*inputs), cy(*inputs)):
            raise SystemExit(f"{name}: backends disagree")
        t_cy = min(timeit.repeat(lambda: cy(*inputs), number=1, repeat=args.repeat))
        print(f"{label:42s} {1e3 * t_py:12.2f} {1e3 * t_cy:14.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
