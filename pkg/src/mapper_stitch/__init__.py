"""Mapper stitching and topological gains for point-cloud data."""

from ._kernels import active_path
from .dataset import (
    PointCloud,
    FilterFunction,
    evaluate_filter,
    resolve_filter,
    generate_shape,
    load_csv,
    save_csv,
)
from .cover import Interval, Cover, ProductCover, build_cover, locate, product
from .mapper import (
    NeighborhoodGraph,
    CoverElement,
    MapperComplex,
    build_neighborhood_graph,
    default_epsilon,
    components,
    pullback,
    bivariate_pullback,
    nerve,
    build_mapper,
    build_bivariate_mapper,
)
from .composition import (
    CompositionTrace,
    EquivalenceReport,
    compose,
    stitch_interval,
    fix,
    complete,
    verify_equivalence,
)
from .gains import (
    GainReport,
    MEASURES,
    RESTRICTION_MODES,
    restrict,
    betti,
    euler,
    entropy_distance,
    entropy_adjacency,
    measure_vector,
    global_measure,
    gain_report,
)
from .errors import (
    MapperStitchError,
    DataError,
    SpecError,
    CompositionError,
    VerificationError,
)

__version__ = "0.1.0"

__all__ = [
    "PointCloud", "FilterFunction", "evaluate_filter", "resolve_filter",
    "generate_shape", "load_csv", "save_csv",
    "Interval", "Cover", "ProductCover", "build_cover", "locate", "product",
    "NeighborhoodGraph", "CoverElement", "MapperComplex",
    "build_neighborhood_graph", "default_epsilon", "components", "pullback",
    "bivariate_pullback", "nerve", "build_mapper", "build_bivariate_mapper",
    "CompositionTrace", "EquivalenceReport", "compose", "stitch_interval",
    "fix", "complete", "verify_equivalence",
    "GainReport", "MEASURES", "RESTRICTION_MODES", "restrict", "betti",
    "euler", "entropy_distance", "entropy_adjacency", "measure_vector",
    "global_measure", "gain_report",
    "MapperStitchError", "DataError", "SpecError", "CompositionError",
    "VerificationError",
    "active_path",
]
