"""Hot numeric kernels with two interchangeable implementations.

Every kernel exists twice: a loop version compiled with numba's @njit and a
vectorized/streaming pure-numpy fallback. The active path is chosen once at
import time from the MAPPER_STITCH_NUMBA environment variable ("0" forces the
numpy path; anything else uses numba when importable). Both paths produce
bit-identical outputs: squared distances are accumulated coordinate-by-
coordinate in the same order, and neighbor lists are emitted in ascending
index order.

Kernels:
  eps_adjacency        CSR adjacency of the epsilon-neighborhood graph
  subset_components    component labels of an induced subgraph
  knn_mean_distance    mean distance to the k-th nearest neighbor
  distance_histogram   ordered-pair counts per graph distance (BFS)

benchmarks/bench_kernels.py times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("MAPPER_STITCH_NUMBA", "1").strip().lower()
NUMBA_REQUESTED = _FLAG not in ("0", "false", "no", "off")

if NUMBA_REQUESTED:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False


# ---------------------------------------------------------------------------
# epsilon-neighborhood adjacency (CSR)
# ---------------------------------------------------------------------------

def _eps_adjacency_loops(points, eps2):
    n = points.shape[0]
    d = points.shape[1]
    counts = np.zeros(n, dtype=np.int64)
    for i in range(n):
        c = 0
        for j in range(n):
            if i == j:
                continue
            s = 0.0
            for a in range(d):
                diff = points[i, a] - points[j, a]
                s += diff * diff
            if s <= eps2:
                c += 1
        counts[i] = c
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        indptr[i + 1] = indptr[i] + counts[i]
    indices = np.empty(indptr[n], dtype=np.int64)
    for i in range(n):
        k = indptr[i]
        for j in range(n):
            if i == j:
                continue
            s = 0.0
            for a in range(d):
                diff = points[i, a] - points[j, a]
                s += diff * diff
            if s <= eps2:
                indices[k] = j
                k += 1
    return indptr, indices


def eps_adjacency_numpy(points, eps):
    """Pure-numpy adjacency build, blockwise to bound memory."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    n = points.shape[0]
    eps2 = float(eps) * float(eps)
    block = max(1, int(4_000_000 // max(1, n)))
    counts = np.zeros(n, dtype=np.int64)
    chunks = []
    for start in range(0, n, block):
        stop = min(start + block, n)
        diff = points[start:stop, None, :] - points[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        mask = d2 <= eps2
        mask[np.arange(stop - start), np.arange(start, stop)] = False
        counts[start:stop] = mask.sum(axis=1)
        chunks.append(np.nonzero(mask)[1].astype(np.int64))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
    return indptr, indices


# ---------------------------------------------------------------------------
# connected components of an induced subgraph
# ---------------------------------------------------------------------------

def _subset_components_loops(indptr, indices, subset, n):
    m = subset.shape[0]
    pos = np.full(n, -1, dtype=np.int64)
    for s in range(m):
        pos[subset[s]] = s
    labels = np.full(m, -1, dtype=np.int64)
    stack = np.empty(m, dtype=np.int64)
    comp = 0
    for s in range(m):
        if labels[s] != -1:
            continue
        labels[s] = comp
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            g = subset[stack[top]]
            for ptr in range(indptr[g], indptr[g + 1]):
                lp = pos[indices[ptr]]
                if lp >= 0 and labels[lp] == -1:
                    labels[lp] = comp
                    stack[top] = lp
                    top += 1
        comp += 1
    return labels


def subset_components_numpy(indptr, indices, subset, n):
    """Numpy/python BFS labeling; identical label order to the loop kernel."""
    m = subset.shape[0]
    pos = np.full(n, -1, dtype=np.int64)
    pos[subset] = np.arange(m, dtype=np.int64)
    labels = np.full(m, -1, dtype=np.int64)
    comp = 0
    for s in range(m):
        if labels[s] != -1:
            continue
        labels[s] = comp
        stack = [s]
        while stack:
            g = int(subset[stack.pop()])
            lp = pos[indices[indptr[g]:indptr[g + 1]]]
            lp = lp[lp >= 0]
            fresh = lp[labels[lp] == -1]
            if fresh.size:
                labels[fresh] = comp
                stack.extend(fresh.tolist())
        comp += 1
    return labels


# ---------------------------------------------------------------------------
# mean k-nearest-neighbor distance (used for the default epsilon)
# ---------------------------------------------------------------------------

def _knn_mean_distance_loops(points, k):
    n = points.shape[0]
    d = points.shape[1]
    buf = np.empty(k, dtype=np.float64)
    total = 0.0
    for i in range(n):
        filled = 0
        for j in range(n):
            if i == j:
                continue
            s = 0.0
            for a in range(d):
                diff = points[i, a] - points[j, a]
                s += diff * diff
            if filled < k:
                buf[filled] = s
                filled += 1
                if filled == k:
                    buf[:k] = np.sort(buf[:k])
            elif s < buf[k - 1]:
                p = k - 1
                while p > 0 and buf[p - 1] > s:
                    buf[p] = buf[p - 1]
                    p -= 1
                buf[p] = s
        total += np.sqrt(buf[filled - 1] if filled < k else buf[k - 1])
    return total / n


def knn_mean_distance_numpy(points, k):
    points = np.ascontiguousarray(points, dtype=np.float64)
    n = points.shape[0]
    k = min(k, n - 1)
    block = max(1, int(4_000_000 // max(1, n)))
    total = 0.0
    for start in range(0, n, block):
        stop = min(start + block, n)
        diff = points[start:stop, None, :] - points[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        d2[np.arange(stop - start), np.arange(start, stop)] = np.inf
        kth = np.partition(d2, k - 1, axis=1)[:, k - 1]
        total += float(np.sqrt(kth).sum())
    return total / n


# ---------------------------------------------------------------------------
# graph-distance histogram (ordered pairs) via repeated BFS
# ---------------------------------------------------------------------------

def _distance_histogram_loops(indptr, indices, n):
    counts = np.zeros(n + 1, dtype=np.int64)
    inf_pairs = 0
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for src in range(n):
        dist[:] = -1
        dist[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        reached = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for ptr in range(indptr[u], indptr[u + 1]):
                v = indices[ptr]
                if dist[v] == -1:
                    dist[v] = du + 1
                    counts[du + 1] += 1
                    queue[tail] = v
                    tail += 1
                    reached += 1
        inf_pairs += n - reached
    return counts, inf_pairs


def distance_histogram_numpy(indptr, indices, n):
    counts = np.zeros(n + 1, dtype=np.int64)
    inf_pairs = 0
    for src in range(n):
        dist = np.full(n, -1, dtype=np.int64)
        dist[src] = 0
        frontier = np.array([src], dtype=np.int64)
        d = 0
        reached = 1
        while frontier.size:
            nxt = []
            for u in frontier:
                nxt.append(indices[indptr[u]:indptr[u + 1]])
            nbrs = np.unique(np.concatenate(nxt)) if nxt else np.empty(0, np.int64)
            fresh = nbrs[dist[nbrs] == -1]
            d += 1
            dist[fresh] = d
            counts[d] += fresh.size
            reached += fresh.size
            frontier = fresh
        inf_pairs += n - reached
    return counts, inf_pairs


# ---------------------------------------------------------------------------
# path selection
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:
    _eps_adjacency_jit = njit(cache=True)(_eps_adjacency_loops)
    _subset_components_jit = njit(cache=True)(_subset_components_loops)
    _knn_mean_distance_jit = njit(cache=True)(_knn_mean_distance_loops)
    _distance_histogram_jit = njit(cache=True)(_distance_histogram_loops)

    def eps_adjacency_numba(points, eps):
        points = np.ascontiguousarray(points, dtype=np.float64)
        return _eps_adjacency_jit(points, float(eps) * float(eps))

    def subset_components_numba(indptr, indices, subset, n):
        return _subset_components_jit(indptr, indices, subset, n)

    def knn_mean_distance_numba(points, k):
        points = np.ascontiguousarray(points, dtype=np.float64)
        return _knn_mean_distance_jit(points, min(k, points.shape[0] - 1))

    def distance_histogram_numba(indptr, indices, n):
        return _distance_histogram_jit(indptr, indices, n)

    eps_adjacency = eps_adjacency_numba
    subset_components = subset_components_numba
    knn_mean_distance = knn_mean_distance_numba
    distance_histogram = distance_histogram_numba
else:
    eps_adjacency = eps_adjacency_numpy
    subset_components = subset_components_numpy
    knn_mean_distance = knn_mean_distance_numpy
    distance_histogram = distance_histogram_numpy


def active_path() -> str:
    """Name of the kernel path selected at import time."""
    return "numba" if NUMBA_ENABLED else "numpy"


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs (no-op on the numpy path)."""
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.5]])
    indptr, indices = eps_adjacency(pts, 1.1)
    subset_components(indptr, indices, np.array([0, 1, 2], dtype=np.int64), 3)
    knn_mean_distance(pts, 2)
    distance_histogram(indptr, indices, 3)
