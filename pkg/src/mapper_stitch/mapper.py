"""Mapper complexes: epsilon-graph connectivity, pullback covers, nerves.

Connectivity is defined once, globally, by the epsilon-neighborhood graph;
components of any point subset are the components of the induced subgraph
(this coincides with DBSCAN at min_samples=1). Using one global connectivity
notion is what makes the composed and directly-built bivariate mappers
exactly equal at the point-cloud level.

A vertex (CoverElement) is identified by (origin, member set); its origin is
the interval index tuple it was built from: (i,) for univariate mappers and
(i, j) for bivariate ones. Vertices are ordered by origin and then smallest
member, so identical inputs always produce identical complexes.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .cover import Cover, ProductCover, membership_masks
from .dataset import PointCloud, FilterFunction, evaluate_filter

DEFAULT_MAX_DIM = 3
DEFAULT_KNN = 5
DEFAULT_EPS_SCALE = 1.5


@dataclass(frozen=True)
class NeighborhoodGraph:
    """Undirected, unweighted epsilon-adjacency over point indices (CSR)."""

    epsilon: float
    n: int
    indptr: np.ndarray
    indices: np.ndarray

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    @property
    def n_edges(self) -> int:
        return int(self.indices.shape[0]) // 2


@dataclass(frozen=True)
class CoverElement:
    """A path-connected set of point indices tagged with its cover origin."""

    members: tuple[int, ...]
    origin: tuple[int, ...]
    member_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.members:
            raise ValueError("CoverElement must be nonempty")
        object.__setattr__(self, "member_set", frozenset(self.members))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def first_factor(self) -> int:
        """Interval index in the first-factor cover."""
        return self.origin[0]

    @property
    def canonical_id(self) -> int:
        return hash(self.members)

    def key(self) -> tuple:
        return (self.origin, self.members)


class MapperComplex:
    """A simplicial complex over CoverElement vertices (nerve of a cover).

    simplices holds sorted vertex-index tuples of every dimension up to
    max_dim, vertices included as singletons; the set is downward closed.
    covers/filter_values/graph record how the complex was built (one entry
    for univariate complexes, two for bivariate/composed ones).
    """

    def __init__(self, vertices, simplices, max_dim, covers=(), filter_values=(),
                 graph=None):
        self.vertices: tuple[CoverElement, ...] = tuple(vertices)
        self.simplices: frozenset[tuple[int, ...]] = frozenset(simplices)
        self.max_dim = int(max_dim)
        self.covers: tuple[Cover, ...] = tuple(covers)
        self.filter_values: tuple[np.ndarray, ...] = tuple(filter_values)
        self.graph: NeighborhoodGraph | None = graph

    # -- structure ---------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def simplices_of_dim(self, d: int) -> list[tuple[int, ...]]:
        return sorted(s for s in self.simplices if len(s) == d + 1)

    def edges(self) -> list[tuple[int, int]]:
        return self.simplices_of_dim(1)

    def counts_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.simplices:
            out[len(s) - 1] = out.get(len(s) - 1, 0) + 1
        return out

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def one_skeleton(self) -> "MapperComplex":
        return MapperComplex(
            self.vertices,
            {s for s in self.simplices if len(s) <= 2},
            max_dim=1,
            covers=self.covers,
            filter_values=self.filter_values,
            graph=self.graph,
        )

    # -- canonical forms (vertex identity = sorted member set) --------------

    def canonical_vertices(self) -> set[tuple[int, ...]]:
        return {v.members for v in self.vertices}

    def canonical_simplices(self) -> set[frozenset]:
        out = set()
        for s in self.simplices:
            out.add(frozenset(self.vertices[i].members for i in s))
        return out

    def intersection_of(self, simplex) -> frozenset:
        """Common members of a simplex's vertices (the nerve witness set)."""
        sets = sorted((self.vertices[i].member_set for i in simplex), key=len)
        inter = sets[0]
        for s in sets[1:]:
            inter = inter & s
            if not inter:
                break
        return inter


# ---------------------------------------------------------------------------
# graph construction and components
# ---------------------------------------------------------------------------

def build_neighborhood_graph(cloud: PointCloud, epsilon: float) -> NeighborhoodGraph:
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    indptr, indices = _kernels.eps_adjacency(cloud.points, float(epsilon))
    return NeighborhoodGraph(float(epsilon), cloud.n_points, indptr, indices)


def default_epsilon(cloud: PointCloud, k: int = DEFAULT_KNN,
                    scale: float = DEFAULT_EPS_SCALE) -> float:
    """scale x mean distance to the k-th nearest neighbor."""
    if cloud.n_points < 2:
        raise ValueError("need at least 2 points for a data-driven epsilon")
    k = min(k, cloud.n_points - 1)
    return scale * float(_kernels.knn_mean_distance(cloud.points, k))


def components(graph: NeighborhoodGraph, subset) -> list[list[int]]:
    """Connected components of the induced subgraph, each sorted, ordered by
    smallest member."""
    subset = np.asarray(sorted(set(int(i) for i in subset)), dtype=np.int64)
    if subset.size == 0:
        return []
    labels = _kernels.subset_components(graph.indptr, graph.indices, subset,
                                        graph.n)
    groups: dict[int, list[int]] = defaultdict(list)
    for local, lab in enumerate(labels):
        groups[int(lab)].append(int(subset[local]))
    return [groups[c] for c in sorted(groups)]


def _components_of_mask(graph: NeighborhoodGraph, mask: np.ndarray):
    subset = np.flatnonzero(mask).astype(np.int64)
    if subset.size == 0:
        return []
    labels = _kernels.subset_components(graph.indptr, graph.indices, subset,
                                        graph.n)
    groups: dict[int, list[int]] = defaultdict(list)
    for local, lab in enumerate(labels):
        groups[int(lab)].append(int(subset[local]))
    return [groups[c] for c in sorted(groups)]


# ---------------------------------------------------------------------------
# pullback covers
# ---------------------------------------------------------------------------

def pullback(cloud: PointCloud, filter_values, cover: Cover,
             graph: NeighborhoodGraph) -> list[CoverElement]:
    """Decompose each interval preimage into path-connected CoverElements."""
    values = np.asarray(filter_values, dtype=np.float64)
    if values.shape != (cloud.n_points,):
        raise ValueError("filter_values length does not match the cloud")
    elements: list[CoverElement] = []
    for iv, mask in zip(cover.intervals, membership_masks(cover, values)):
        for comp in _components_of_mask(graph, mask):
            elements.append(CoverElement(tuple(comp), (iv.index,)))
    return elements


def bivariate_pullback(cloud: PointCloud, values_a, values_b,
                       prod: ProductCover, graph: NeighborhoodGraph
                       ) -> list[CoverElement]:
    """Pullback over rectangle cells; membership is the conjunction of the
    two interval memberships."""
    va = np.asarray(values_a, dtype=np.float64)
    vb = np.asarray(values_b, dtype=np.float64)
    masks_a = membership_masks(prod.first, va)
    masks_b = membership_masks(prod.second, vb)
    elements: list[CoverElement] = []
    for i in range(prod.first.resolution):
        for j in range(prod.second.resolution):
            mask = masks_a[i] & masks_b[j]
            for comp in _components_of_mask(graph, mask):
                elements.append(CoverElement(tuple(comp), (i, j)))
    return elements


# ---------------------------------------------------------------------------
# nerve
# ---------------------------------------------------------------------------

def nerve(elements, max_dim: int = DEFAULT_MAX_DIM) -> MapperComplex:
    """Nerve of a list of CoverElements up to dimension max_dim.

    Simplices are enumerated through shared points: a subset of vertices is
    a simplex exactly when some point lies in all of them, so every stored
    simplex carries an intersection witness by construction.
    """
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    elements = list(elements)
    simplices: set[tuple[int, ...]] = {(vi,) for vi in range(len(elements))}
    incidence: dict[int, list[int]] = defaultdict(list)
    for vi, el in enumerate(elements):
        for p in el.members:
            incidence[p].append(vi)
    for verts in incidence.values():
        top = min(len(verts), max_dim + 1)
        for k in range(2, top + 1):
            simplices.update(itertools.combinations(verts, k))
    return MapperComplex(elements, simplices, max_dim)


# ---------------------------------------------------------------------------
# mapper builders
# ---------------------------------------------------------------------------

def build_mapper(cloud: PointCloud, filt: FilterFunction, cover: Cover,
                 graph: NeighborhoodGraph,
                 max_dim: int = DEFAULT_MAX_DIM) -> MapperComplex:
    values = evaluate_filter(cloud, filt)
    elements = pullback(cloud, values, cover, graph)
    cx = nerve(elements, max_dim)
    cx.covers = (cover,)
    cx.filter_values = (values,)
    cx.graph = graph
    return cx


def build_bivariate_mapper(cloud: PointCloud, filt_a: FilterFunction,
                           filt_b: FilterFunction, prod: ProductCover,
                           graph: NeighborhoodGraph,
                           max_dim: int = DEFAULT_MAX_DIM) -> MapperComplex:
    va = evaluate_filter(cloud, filt_a)
    vb = evaluate_filter(cloud, filt_b)
    elements = bivariate_pullback(cloud, va, vb, prod, graph)
    cx = nerve(elements, max_dim)
    cx.covers = (prod.first, prod.second)
    cx.filter_values = (va, vb)
    cx.graph = graph
    return cx
