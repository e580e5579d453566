"""Time the numba kernels against their pure-numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--n-points N] [--repeats R]

Runs each kernel on a synthetic cylinder workload that mirrors the hot loops
of a matrix computation: epsilon-adjacency build, per-interval component
labeling, kNN scan for the default epsilon, and the all-pairs BFS behind the
distance entropy.
"""

import argparse
import time

import numpy as np

from mapper_stitch import _kernels
from mapper_stitch.cover import build_cover, membership_masks
from mapper_stitch.dataset import generate_shape


def _time(fn, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-points", type=int, default=3000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if not _kernels.NUMBA_ENABLED:
        parser.error("numba path unavailable (MAPPER_STITCH_NUMBA=0 or numba "
                     "missing); nothing to compare")

    cloud = generate_shape("cylinder", args.n_points, 0.02, seed=0)
    pts = cloud.points
    eps = 0.25
    print(f"workload: cylinder n={args.n_points}, eps={eps}, "
          f"repeats={args.repeats} (best-of shown)\n")
    rows = []

    # JIT warmup so compilation is not timed
    _kernels.warmup()

    t_nb, (indptr, indices) = _time(
        lambda: _kernels.eps_adjacency_numba(pts, eps), args.repeats)
    t_np, ref = _time(
        lambda: _kernels.eps_adjacency_numpy(pts, eps), args.repeats)
    assert np.array_equal(indices, ref[1])
    rows.append(("eps_adjacency", t_nb, t_np))

    values = pts[:, 2]
    masks = membership_masks(build_cover(values, 10, 0.3), values)
    subsets = [np.flatnonzero(m).astype(np.int64) for m in masks]

    def run_components(fn):
        def inner():
            out = []
            for subset in subsets:
                out.append(fn(indptr, indices, subset, len(pts)))
            return out
        return inner

    t_nb, got = _time(run_components(_kernels.subset_components_numba),
                      args.repeats)
    t_np, ref = _time(run_components(_kernels.subset_components_numpy),
                      args.repeats)
    assert all(np.array_equal(a, b) for a, b in zip(got, ref))
    rows.append(("subset_components x10", t_nb, t_np))

    t_nb, v1 = _time(lambda: _kernels.knn_mean_distance_numba(pts, 5),
                     args.repeats)
    t_np, v2 = _time(lambda: _kernels.knn_mean_distance_numpy(pts, 5),
                     args.repeats)
    assert abs(v1 - v2) < 1e-9
    rows.append(("knn_mean_distance", t_nb, t_np))

    # entropy-sized graph: ring lattice with ~1000 vertices
    n = 1000
    ring = [[(i + d) % n for d in (-2, -1, 1, 2)] for i in range(n)]
    rptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        rptr[i + 1] = rptr[i] + len(ring[i])
    ridx = np.array([j for row in ring for j in sorted(row)], dtype=np.int64)
    t_nb, h1 = _time(lambda: _kernels.distance_histogram_numba(rptr, ridx, n),
                     args.repeats)
    t_np, h2 = _time(lambda: _kernels.distance_histogram_numpy(rptr, ridx, n),
                     args.repeats)
    assert np.array_equal(h1[0], h2[0]) and h1[1] == h2[1]
    rows.append(("distance_histogram (1k ring)", t_nb, t_np))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_nb, t_np in rows:
        print(f"{name:<{width}}  {t_nb * 1e3:>8.2f}ms  {t_np * 1e3:>8.2f}ms  "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
