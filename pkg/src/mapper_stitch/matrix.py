"""Mapper-graph matrix assembly and JSON serialization.

A matrix over variables v_1..v_k puts univariate mappers on the diagonal and
bivariate mappers off it: cell (i, j) composes the row mapper with the
column mapper (row variable first), so (i, j) and (j, i) hold the same
complex with origins transposed, and each differences its measure against
the row's univariate base. Off-diagonal cells are produced by the stitching
algorithm; --verify additionally rebuilds every cell directly from the
product cover and requires exact equality.

The JSON schema (version 1.0):
  { version, spec, cells: [ {row, col,
      graph: {nodes: [{id, interval, size, members?}], edges: [[id,id]],
              simplices: [[id,...], ...]},
      vectors: {base, stitched, diff}, global: {base, stitched, diff},
      trace? } ] }
Diagonal cells carry null stitched/diff entries. Serialization is canonical
(sorted keys, no whitespace), so any two computations of the same spec are
byte-identical.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .composition import compose, verify_equivalence
from .cover import build_cover, product
from .dataset import (
    SHAPE_NAMES,
    PointCloud,
    generate_shape,
    load_csv,
    resolve_filter,
    evaluate_filter,
)
from .errors import DataError, SpecError, VerificationError
from .gains import (
    MEASURES,
    RESTRICTION_MODES,
    gain_report,
    global_measure,
    measure_vector,
)
from .mapper import (
    DEFAULT_MAX_DIM,
    build_bivariate_mapper,
    build_mapper,
    build_neighborhood_graph,
    default_epsilon,
)

SCHEMA_VERSION = "1.0"
MAX_VARIABLES = 8  # UI practicality cap
THREADS_ENV = "MAPPER_STITCH_THREADS"


@dataclass
class MatrixSpec:
    dataset: str
    variables: list[str]
    intervals: list[int]
    overlaps: list[float]
    epsilon: float | None = None
    measure: str = "lhd0"
    restriction: str = "interior"
    max_dim: int = DEFAULT_MAX_DIM
    seed: int = 0
    n_points: int = 2000
    noise: float = 0.0
    verify: bool = False
    include_members: bool = False
    include_traces: bool = False

    def validate(self) -> None:
        if not self.dataset:
            raise SpecError("dataset reference is empty")
        k = len(self.variables)
        if not 2 <= k <= MAX_VARIABLES:
            raise SpecError(f"variables must list between 2 and {MAX_VARIABLES} names")
        if len(self.intervals) != k or len(self.overlaps) != k:
            raise SpecError("intervals and overlaps must match the variable count")
        for n in self.intervals:
            if not isinstance(n, int) or n < 1:
                raise SpecError("resolution must be a positive integer")
        for p in self.overlaps:
            if not 0.0 <= p < 1.0:
                raise SpecError("overlap out of range")
        if self.epsilon is not None and self.epsilon <= 0:
            raise SpecError("epsilon must be positive")
        if self.measure not in MEASURES:
            raise SpecError(f"unknown measure {self.measure!r}")
        if self.restriction not in RESTRICTION_MODES:
            raise SpecError(f"unknown restriction {self.restriction!r}")
        if self.max_dim < 1:
            raise SpecError("max_dim must be >= 1")
        if self.n_points < 10:
            raise SpecError("n_points must be >= 10")
        if self.noise < 0:
            raise SpecError("noise must be >= 0")

    @classmethod
    def from_dict(cls, payload) -> "MatrixSpec":
        if not isinstance(payload, dict):
            raise SpecError("spec must be a JSON object")
        known = {
            "dataset", "variables", "intervals", "overlaps", "overlap",
            "epsilon", "measure", "restriction", "max_dim", "seed",
            "n_points", "noise", "verify", "include_members", "include_traces",
        }
        unknown = set(payload) - known
        if unknown:
            raise SpecError(f"unknown spec fields: {sorted(unknown)}")
        try:
            variables = [str(v) for v in payload["variables"]]
            dataset = str(payload["dataset"])
        except KeyError as exc:
            raise SpecError(f"missing spec field: {exc.args[0]}") from None
        k = len(variables)

        def broadcast(value, cast, name):
            if isinstance(value, (list, tuple)):
                out = [cast(v) for v in value]
                if len(out) == 1:
                    out = out * k
                return out
            return [cast(value)] * k

        try:
            intervals = broadcast(payload.get("intervals", 10), int, "intervals")
            overlaps = broadcast(
                payload.get("overlaps", payload.get("overlap", 0.2)), float,
                "overlaps")
            epsilon = payload.get("epsilon")
            spec = cls(
                dataset=dataset,
                variables=variables,
                intervals=intervals,
                overlaps=overlaps,
                epsilon=None if epsilon is None else float(epsilon),
                measure=str(payload.get("measure", "lhd0")),
                restriction=str(payload.get("restriction", "interior")),
                max_dim=int(payload.get("max_dim", DEFAULT_MAX_DIM)),
                seed=int(payload.get("seed", 0)),
                n_points=int(payload.get("n_points", 2000)),
                noise=float(payload.get("noise", 0.0)),
                verify=bool(payload.get("verify", False)),
                include_members=bool(payload.get("include_members", False)),
                include_traces=bool(payload.get("include_traces", False)),
            )
        except (TypeError, ValueError) as exc:
            raise SpecError(f"malformed spec value: {exc}") from None
        spec.validate()
        return spec

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "variables": list(self.variables),
            "intervals": list(self.intervals),
            "overlaps": list(self.overlaps),
            "epsilon": self.epsilon,
            "measure": self.measure,
            "restriction": self.restriction,
            "max_dim": self.max_dim,
            "seed": self.seed,
            "n_points": self.n_points,
            "noise": self.noise,
            "verify": self.verify,
            "include_members": self.include_members,
            "include_traces": self.include_traces,
        }

    def canonical_key(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class MatrixCell:
    row: int
    col: int
    complex: object
    vectors: dict
    global_values: dict
    trace: object = None


@dataclass
class MatrixResult:
    spec: MatrixSpec
    cells: list[MatrixCell] = field(default_factory=list)

    def cell(self, row: int, col: int) -> MatrixCell:
        for c in self.cells:
            if c.row == row and c.col == col:
                return c
        raise KeyError((row, col))


# ---------------------------------------------------------------------------
# dataset resolution
# ---------------------------------------------------------------------------

def resolve_dataset(spec: MatrixSpec, data_dir=None) -> PointCloud:
    """Load the referenced dataset: a shape name, a CSV path, or the stem of
    a CSV inside data_dir."""
    name = spec.dataset
    if name in SHAPE_NAMES:
        return generate_shape(name, spec.n_points, spec.noise, spec.seed)
    candidates = [Path(name)]
    if data_dir is not None:
        candidates += [Path(data_dir) / name, Path(data_dir) / f"{name}.csv"]
    for path in candidates:
        if path.is_file():
            return _load_table(path)
    raise DataError(f"unknown dataset {name!r}")


def _load_table(path) -> PointCloud:
    with open(path, newline="", encoding="utf-8") as fh:
        header = fh.readline()
    columns = [c.strip() for c in header.split(",") if c.strip()]
    if not columns:
        raise DataError(f"{path}: empty header")
    return load_csv(path, columns, columns)


def _thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


# ---------------------------------------------------------------------------
# matrix computation
# ---------------------------------------------------------------------------

def compute_matrix(spec: MatrixSpec, data_dir=None) -> MatrixResult:
    spec.validate()
    cloud = resolve_dataset(spec, data_dir)
    try:
        filters = [resolve_filter(cloud, label) for label in spec.variables]
    except DataError as exc:
        raise SpecError(str(exc)) from None
    eps = spec.epsilon if spec.epsilon is not None else default_epsilon(cloud)
    graph = build_neighborhood_graph(cloud, eps)
    values = [evaluate_filter(cloud, f) for f in filters]
    covers = [build_cover(v, n, p)
              for v, n, p in zip(values, spec.intervals, spec.overlaps)]
    unis = [build_mapper(cloud, f, c, graph, spec.max_dim)
            for f, c in zip(filters, covers)]

    k = len(spec.variables)
    tasks = [(i, j) for i in range(k) for j in range(k)]

    def compute_cell(pos):
        i, j = pos
        if i == j:
            uni = unis[i]
            base_vec = measure_vector(uni, spec.measure, spec.restriction)
            return MatrixCell(
                row=i, col=j, complex=uni,
                vectors={"base": base_vec, "stitched": None, "diff": None},
                global_values={"base": global_measure(uni, spec.measure),
                               "stitched": None, "diff": None},
            )
        composed, trace = compose(unis[i], unis[j], graph, spec.max_dim)
        if spec.verify:
            direct = build_bivariate_mapper(
                cloud, filters[i], filters[j],
                product(covers[i], covers[j]), graph, spec.max_dim)
            report = verify_equivalence(composed, direct)
            if not report.equal:
                raise VerificationError(
                    f"cell ({i},{j}) [{spec.variables[i]},{spec.variables[j]}]: "
                    + report.summary(), report=report)
        gr = gain_report(unis[i], composed, spec.measure, spec.restriction)
        return MatrixCell(
            row=i, col=j, complex=composed,
            vectors={"base": gr.base_vector, "stitched": gr.stitched_vector,
                     "diff": gr.diff_vector},
            global_values={"base": gr.global_base,
                           "stitched": gr.global_stitched,
                           "diff": gr.global_diff},
            trace=trace if spec.include_traces else None,
        )

    workers = min(_thread_cap(), len(tasks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(compute_cell, tasks))
    else:
        cells = [compute_cell(t) for t in tasks]
    return MatrixResult(spec=spec, cells=cells)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _complex_to_dict(cx, include_members: bool) -> dict:
    nodes = []
    for idx, v in enumerate(cx.vertices):
        node = {"id": idx, "interval": v.first_factor, "size": v.size}
        if include_members:
            node["members"] = [int(p) for p in v.members]
        nodes.append(node)
    edges = [[a, b] for a, b in cx.edges()]
    simplices = [list(s) for s in sorted(cx.simplices) if len(s) > 2]
    return {"nodes": nodes, "edges": edges, "simplices": simplices}


def _scalar(value):
    if value is None:
        return None
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    return float(value)


def _vector(values):
    if values is None:
        return None
    return [_scalar(v) for v in values]


def matrix_result_to_dict(result: MatrixResult) -> dict:
    include_members = result.spec.include_members
    cells = []
    for cell in sorted(result.cells, key=lambda c: (c.row, c.col)):
        entry = {
            "row": cell.row,
            "col": cell.col,
            "graph": _complex_to_dict(cell.complex, include_members),
            "vectors": {k: _vector(v) for k, v in cell.vectors.items()},
            "global": {k: _scalar(v) for k, v in cell.global_values.items()},
        }
        if cell.trace is not None:
            entry["trace"] = cell.trace.to_dict()
        cells.append(entry)
    return {
        "version": SCHEMA_VERSION,
        "spec": result.spec.to_dict(),
        "cells": cells,
    }


def serialize_matrix_result(result: MatrixResult) -> str:
    """Canonical JSON text; identical specs serialize to identical bytes."""
    return json.dumps(matrix_result_to_dict(result), sort_keys=True,
                      separators=(",", ":"))


def export_json(result: MatrixResult, path) -> None:
    text = serialize_matrix_result(result)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc
