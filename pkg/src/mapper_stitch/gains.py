"""Topological gain measures between univariate and bivariate mappers.

Per interval of the first-factor cover, a mapper is restricted to either the
interior subcomplex (induced by vertices whose first-factor origin is the
interval) or the boundary subcomplex (interior simplices plus all their
cofaces, closed under faces so the result is again a complex). Measures:

  lhd0 / lhd1   Betti numbers over the two-element field
  lrec          Euler characteristic (alternating simplex-count sum)
  led_d         graph entropy from the distance-value distribution, with an
                infinity group so disconnected graphs are covered
  led_a         graph entropy from the edge-weight distribution

Entropies use the natural logarithm (the only base consistent with the
reference values they reproduce) and the 0*log(0) := 0 convention. The
entropy measures apply to mapper graphs, so led_* restrictions are taken on
the 1-skeleton: a boundary subgraph is the star of the interior vertices in
the graph, which is smaller than the skeleton of the complex-level star.
Mapper graphs are unweighted; entropy_adjacency accepts explicit positive
weights for other uses. Edges never straddle two components, so the
cross-component zero-probability extension of the adjacency entropy is
vacuous for the edge-indexed sum implemented here.

Gain vectors difference the bivariate against the univariate measure per
interval; the global scalars difference the measures of the full,
unrestricted complexes (graphs for led_*). An interval whose restriction is
empty contributes 0 to entropy vectors; entropy_distance itself rejects an
empty graph.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .mapper import MapperComplex

MEASURES = ("lhd0", "lhd1", "lrec", "led_d", "led_a")
RESTRICTION_MODES = ("interior", "boundary")


# ---------------------------------------------------------------------------
# restriction
# ---------------------------------------------------------------------------

def restrict(cx: MapperComplex, interval_index: int, mode: str) -> MapperComplex:
    """Interior or boundary subcomplex for one first-factor interval."""
    if mode not in RESTRICTION_MODES:
        raise ValueError(f"unknown restriction mode {mode!r}")
    if not cx.covers:
        raise ValueError("complex carries no cover metadata")
    if not 0 <= interval_index < cx.covers[0].resolution:
        raise ValueError(f"interval index {interval_index} out of range")
    interior = {i for i, v in enumerate(cx.vertices)
                if v.first_factor == interval_index}
    kept: set[tuple[int, ...]] = set()
    if mode == "interior":
        kept = {s for s in cx.simplices if interior.issuperset(s)}
    else:
        for s in cx.simplices:
            if interior.intersection(s):
                for k in range(1, len(s) + 1):
                    kept.update(itertools.combinations(s, k))
    used = sorted({v for s in kept for v in s})
    remap = {old: new for new, old in enumerate(used)}
    vertices = [cx.vertices[old] for old in used]
    simplices = {tuple(remap[v] for v in s) for s in kept}
    return MapperComplex(vertices, simplices, cx.max_dim, covers=cx.covers,
                         filter_values=cx.filter_values, graph=cx.graph)


# ---------------------------------------------------------------------------
# homology over Z/2 and Euler characteristic
# ---------------------------------------------------------------------------

def _gf2_rank(rows) -> int:
    """Rank of a Z/2 matrix given as integer bitmask rows (XOR elimination)."""
    basis: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            h = r.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = r
                rank += 1
                break
            r ^= b
    return rank


def _component_count(n_vertices: int, edges) -> int:
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n_vertices
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def betti(cx: MapperComplex, p: int) -> int:
    """Betti number over Z/2 for p in {0, 1}.

    beta_1 is exact for the complex as stored: it uses the boundary ranks of
    the edges and triangles actually present (a pure graph therefore gets
    |E| - |V| + beta_0).
    """
    if p == 0:
        return _component_count(cx.n_vertices, cx.edges())
    if p == 1:
        edges = cx.simplices_of_dim(1)
        rank1 = _gf2_rank((1 << a) | (1 << b) for a, b in edges)
        edge_idx = {e: i for i, e in enumerate(edges)}
        rows = []
        for a, b, c in cx.simplices_of_dim(2):
            rows.append((1 << edge_idx[(a, b)])
                        | (1 << edge_idx[(a, c)])
                        | (1 << edge_idx[(b, c)]))
        rank2 = _gf2_rank(rows)
        return len(edges) - rank1 - rank2
    raise ValueError("only Betti numbers 0 and 1 are supported")


def _betti2(cx: MapperComplex) -> int:
    """beta_2 over Z/2; used by tests to cross-check Euler characteristics."""
    tris = cx.simplices_of_dim(2)
    tri_idx = {t: i for i, t in enumerate(tris)}
    rows2 = []
    edges = cx.simplices_of_dim(1)
    edge_idx = {e: i for i, e in enumerate(edges)}
    for a, b, c in tris:
        rows2.append((1 << edge_idx[(a, b)])
                     | (1 << edge_idx[(a, c)])
                     | (1 << edge_idx[(b, c)]))
    rank2 = _gf2_rank(rows2)
    rows3 = []
    for t in cx.simplices_of_dim(3):
        bits = 0
        for facet in itertools.combinations(t, 3):
            bits |= 1 << tri_idx[facet]
        rows3.append(bits)
    rank3 = _gf2_rank(rows3)
    return len(tris) - rank2 - rank3


def euler(cx: MapperComplex) -> int:
    """Alternating sum over simplex counts by dimension."""
    total = 0
    for s in cx.simplices:
        total += 1 if (len(s) - 1) % 2 == 0 else -1
    return total


# ---------------------------------------------------------------------------
# graph entropies
# ---------------------------------------------------------------------------

def _skeleton_csr(cx: MapperComplex):
    n = cx.n_vertices
    adj = [[] for _ in range(n)]
    for a, b in cx.edges():
        adj[a].append(b)
        adj[b].append(a)
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i, nbrs in enumerate(adj):
        indptr[i + 1] = indptr[i] + len(nbrs)
    indices = np.empty(indptr[n], dtype=np.int64)
    at = 0
    for nbrs in adj:
        for j in sorted(nbrs):
            indices[at] = j
            at += 1
    return indptr, indices


def entropy_distance(cx: MapperComplex) -> float:
    """Mean entropy of the distance-matrix value distribution (natural log).

    The N*N matrix entries are grouped by value: N zeros, 2*k_d entries per
    finite distance d, and 2*k_inf entries for unreachable ordered pairs.
    """
    n = cx.n_vertices
    if n == 0:
        raise ValueError("entropy of an empty graph is undefined")
    indptr, indices = _skeleton_csr(cx)
    counts, inf_pairs = _kernels.distance_histogram(indptr, indices, n)
    n2 = float(n) * float(n)
    h = -(1.0 / n) * math.log(1.0 / n)
    for c in counts[1:]:
        if c > 0:
            p = c / n2
            h -= p * math.log(p)
    if inf_pairs > 0:
        p = inf_pairs / n2
        h -= p * math.log(p)
    return h


def entropy_adjacency(cx: MapperComplex, weights=None) -> float:
    """Mean entropy of the edge-weight distribution (natural log).

    Mapper graphs are unweighted, so the default weight is 1 per edge; an
    edgeless graph has entropy 0.
    """
    edges = cx.edges()
    if not edges:
        return 0.0
    if weights is None:
        w = np.ones(len(edges))
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (len(edges),):
            raise ValueError("weights length does not match the edge count")
        if np.any(w <= 0):
            raise ValueError("edge weights must be positive")
    q = w / w.sum()
    return float(-(q * np.log(q)).sum())


# ---------------------------------------------------------------------------
# gain reports
# ---------------------------------------------------------------------------

@dataclass
class GainReport:
    measure: str
    restriction_mode: str
    base_vector: list
    stitched_vector: list
    diff_vector: list
    global_base: float
    global_stitched: float
    global_diff: float

    def to_dict(self):
        return {
            "measure": self.measure,
            "restriction": self.restriction_mode,
            "vectors": {
                "base": self.base_vector,
                "stitched": self.stitched_vector,
                "diff": self.diff_vector,
            },
            "global": {
                "base": self.global_base,
                "stitched": self.global_stitched,
                "diff": self.global_diff,
            },
        }


def _measure_value(cx: MapperComplex, measure: str):
    if measure == "lhd0":
        return betti(cx, 0)
    if measure == "lhd1":
        return betti(cx, 1)
    if measure == "lrec":
        return euler(cx)
    if measure == "led_d":
        return entropy_distance(cx) if cx.n_vertices else 0.0
    if measure == "led_a":
        return entropy_adjacency(cx)
    raise ValueError(f"unknown measure {measure!r}")


def _measure_base(cx: MapperComplex, measure: str) -> MapperComplex:
    """Entropies are graph measures, so led_* work on the 1-skeleton."""
    return cx.one_skeleton() if measure.startswith("led") else cx


def measure_vector(cx: MapperComplex, measure: str, mode: str) -> list:
    """Per-interval measure vector (the LH / LE vector of one mapper)."""
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    base = _measure_base(cx, measure)
    n = cx.covers[0].resolution
    return [_measure_value(restrict(base, i, mode), measure) for i in range(n)]


def global_measure(cx: MapperComplex, measure: str):
    return _measure_value(_measure_base(cx, measure), measure)


def gain_report(uni: MapperComplex, bi: MapperComplex, measure: str,
                mode: str) -> GainReport:
    """Per-interval and global differences of a measure between a bivariate
    mapper and the univariate mapper its first factor came from."""
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    if mode not in RESTRICTION_MODES:
        raise ValueError(f"unknown restriction mode {mode!r}")
    if len(bi.covers) != 2:
        raise ValueError("second argument must be a bivariate mapper")
    ucov, bcov = uni.covers[0], bi.covers[0]
    if ucov.resolution != bcov.resolution or not np.allclose(
            ucov.bounds(), bcov.bounds()):
        raise ValueError("cover mismatch: the bivariate mapper's first factor "
                         "is not the univariate cover")
    base_vec = measure_vector(uni, measure, mode)
    stitched_vec = measure_vector(bi, measure, mode)
    diff = [s - b for s, b in zip(stitched_vec, base_vec)]
    gb = global_measure(uni, measure)
    gs = global_measure(bi, measure)
    return GainReport(measure=measure, restriction_mode=mode,
                      base_vector=base_vec, stitched_vector=stitched_vec,
                      diff_vector=diff, global_base=gb, global_stitched=gs,
                      global_diff=gs - gb)
