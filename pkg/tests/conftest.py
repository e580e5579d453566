"""Shared fixtures: documented dataset setups reused across the suite.

The synthetic setups pin (seed, density, epsilon) 3-tuples that reproduce
the reference figures; the same values are documented in the README.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

import mapper_stitch as ms
from mapper_stitch import _kernels

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# documented reproduction parameters
CYLINDER = dict(n_points=4000, seed=11, eps=0.25, n=3, p=0.15)
TWO_CIRCLES = dict(n_points=4200, seed=5, eps=0.08, n=7, p=0.05)
CIRCLE = dict(n_points=500, seed=1, eps=0.2, n=5, p=0.33)
SPHERE = dict(n_points=2500, seed=3, n=6, p=0.15)
IRIS = dict(n=10, p=0.30)


@dataclass
class Setup:
    cloud: ms.PointCloud
    graph: ms.NeighborhoodGraph
    filters: dict
    covers: dict
    mappers: dict


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    _kernels.warmup()


@pytest.fixture(scope="session")
def cylinder_setup() -> Setup:
    cfg = CYLINDER
    cloud = ms.generate_shape("cylinder", cfg["n_points"], 0.0, cfg["seed"])
    graph = ms.build_neighborhood_graph(cloud, cfg["eps"])
    filters = {"x": ms.FilterFunction.coordinate(0, "x"),
               "z": ms.FilterFunction.coordinate(2, "z")}
    covers = {k: ms.build_cover(ms.evaluate_filter(cloud, f), cfg["n"], cfg["p"])
              for k, f in filters.items()}
    mappers = {k: ms.build_mapper(cloud, filters[k], covers[k], graph)
               for k in filters}
    return Setup(cloud, graph, filters, covers, mappers)


@pytest.fixture(scope="session")
def two_circles_setup() -> Setup:
    cfg = TWO_CIRCLES
    cloud = ms.generate_shape("two_circles", cfg["n_points"], 0.0, cfg["seed"])
    graph = ms.build_neighborhood_graph(cloud, cfg["eps"])
    filters = {"x": ms.FilterFunction.coordinate(0, "x"),
               "y": ms.FilterFunction.coordinate(1, "y")}
    covers = {k: ms.build_cover(ms.evaluate_filter(cloud, f), cfg["n"], cfg["p"])
              for k, f in filters.items()}
    mappers = {k: ms.build_mapper(cloud, filters[k], covers[k], graph)
               for k in filters}
    return Setup(cloud, graph, filters, covers, mappers)


@pytest.fixture(scope="session")
def sphere_setup() -> Setup:
    cfg = SPHERE
    cloud = ms.generate_shape("sphere", cfg["n_points"], 0.0, cfg["seed"])
    graph = ms.build_neighborhood_graph(cloud, ms.default_epsilon(cloud))
    filters = {"x": ms.FilterFunction.coordinate(0, "x"),
               "y": ms.FilterFunction.coordinate(1, "y")}
    covers = {k: ms.build_cover(ms.evaluate_filter(cloud, f), cfg["n"], cfg["p"])
              for k, f in filters.items()}
    mappers = {k: ms.build_mapper(cloud, filters[k], covers[k], graph)
               for k in filters}
    return Setup(cloud, graph, filters, covers, mappers)


def half_cylinder_grid() -> ms.PointCloud:
    """Deterministic grid sample of the half-cylinder (x <= 0 half) used in
    the stitching walkthrough: 100 angles x 40 heights."""
    theta = np.linspace(np.pi / 2, 3 * np.pi / 2, 100)
    z = np.linspace(-2.0, 2.0, 40)
    T, Z = np.meshgrid(theta, z)
    pts = np.column_stack([np.cos(T).ravel(), np.sin(T).ravel(), Z.ravel()])
    return ms.PointCloud(pts)


@pytest.fixture(scope="session")
def fig5_setup() -> Setup:
    cloud = half_cylinder_grid()
    graph = ms.build_neighborhood_graph(cloud, 0.16)
    filters = {"x": ms.FilterFunction.coordinate(0, "x"),
               "z": ms.FilterFunction.coordinate(2, "z")}
    covers = {"x": ms.build_cover(ms.evaluate_filter(cloud, filters["x"]), 2, 0.15),
              "z": ms.build_cover(ms.evaluate_filter(cloud, filters["z"]), 3, 0.15)}
    mappers = {k: ms.build_mapper(cloud, filters[k], covers[k], graph)
               for k in filters}
    return Setup(cloud, graph, filters, covers, mappers)


@pytest.fixture(scope="session")
def iris_setup() -> Setup:
    names = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
    cloud = ms.load_csv(DATA_DIR / "iris.csv", names, names)
    graph = ms.build_neighborhood_graph(cloud, ms.default_epsilon(cloud))
    filters = {n: ms.FilterFunction.column(n) for n in names}
    covers = {n: ms.build_cover(ms.evaluate_filter(cloud, f), IRIS["n"], IRIS["p"])
              for n, f in filters.items()}
    mappers = {n: ms.build_mapper(cloud, filters[n], covers[n], graph)
               for n in names}
    return Setup(cloud, graph, filters, covers, mappers)


# ---------------------------------------------------------------------------
# randomized corpus used by the oracle and invariant suites
# ---------------------------------------------------------------------------

@dataclass
class RandomInstance:
    seed: int
    cloud: ms.PointCloud
    graph: ms.NeighborhoodGraph
    filter_a: ms.FilterFunction
    filter_b: ms.FilterFunction
    cover_a: ms.Cover
    cover_b: ms.Cover
    mapper_a: ms.MapperComplex
    mapper_b: ms.MapperComplex


def random_instance(seed: int, max_dim: int = 3) -> RandomInstance:
    """One randomized composition instance: <= 60 points, dims 2-3,
    resolutions in [2, 5], overlaps in [0.1, 0.4]."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(8, 61))
    dim = int(rng.integers(2, 4))
    pts = rng.uniform(-1.0, 1.0, size=(n, dim))
    cloud = ms.PointCloud(pts)
    graph = ms.build_neighborhood_graph(cloud, float(rng.uniform(0.15, 0.9)))
    fa = ms.FilterFunction.coordinate(0, "x")
    fb = ms.FilterFunction.coordinate(1, "y")
    ca = ms.build_cover(pts[:, 0], int(rng.integers(2, 6)),
                        float(rng.uniform(0.1, 0.4)))
    cb = ms.build_cover(pts[:, 1], int(rng.integers(2, 6)),
                        float(rng.uniform(0.1, 0.4)))
    ma = ms.build_mapper(cloud, fa, ca, graph, max_dim)
    mb = ms.build_mapper(cloud, fb, cb, graph, max_dim)
    return RandomInstance(seed, cloud, graph, fa, fb, ca, cb, ma, mb)
