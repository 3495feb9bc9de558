"""Timing comparison of the compiled polygon kernels vs the numpy fallback.

Run as: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from affpoints import _polyops_py

try:
    from affpoints import _polyops
except ImportError:
    _polyops = None


def make_polygon(n, seed=0):
    rng = np.random.default_rng(seed)
    t = np.sort(2.0 * np.pi * rng.random(n))
    r = 1.0 + 0.2 * rng.random(n)
    return np.ascontiguousarray(np.column_stack([r * np.cos(t), r * np.sin(t)]))


def bench(mod, verts, dirs, reps):
    out = {}
    t0 = time.perf_counter()
    for _ in range(reps):
        mod.area_centroid(verts)
    out["area_centroid"] = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    for _ in range(reps):
        mod.clip_halfplane(verts, 1.0, 0.0, 0.3)
    out["clip_halfplane"] = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    for _ in range(reps):
        mod.cap_area(verts, 1.0, 0.0, 0.3)
    out["cap_area"] = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    for _ in range(reps):
        mod.polar_vertices(verts, 0.05, -0.02)
    out["polar_vertices"] = (time.perf_counter() - t0) / reps
    t0 = time.perf_counter()
    for _ in range(reps):
        mod.supports(verts, dirs)
    out["supports"] = (time.perf_counter() - t0) / reps
    return out


def main():
    reps = 2000
    for n in (8, 64, 512):
        verts = make_polygon(n)
        dirs = np.ascontiguousarray(make_polygon(256))
        py = bench(_polyops_py, verts, dirs, reps)
        print(f"\nn = {n} vertices ({reps} reps, seconds per call)")
        if _polyops is None:
            for k, v in py.items():
                print(f"  {k:16s} python {v:.3e}   (no compiled backend)")
            continue
        cy = bench(_polyops, verts, dirs, reps)
        for k in py:
            speedup = py[k] / cy[k]
            print(f"  {k:16s} python {py[k]:.3e}  cython {cy[k]:.3e}  "
                  f"x{speedup:.1f}")


if __name__ == "__main__":
    main()
