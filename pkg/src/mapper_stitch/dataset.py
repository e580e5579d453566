"""Point clouds, tabular loading, synthetic shapes, and filter functions.

Synthetic shape constants (documented, arbitrary but fixed):
  circle       radius 1, 2-D
  two_circles  concentric radii 1 and 2.5, 2-D, points split by circumference
  cylinder     radius 1, height 4 centered on the origin (z in [-2, 2]), 3-D
  sphere       radius 1, 3-D, uniform surface sampling

Sampling laws: uniform angle for circles, uniform (angle x height) for the
cylinder, normalized Gaussian for the sphere; optional isotropic Gaussian
noise on top. All generators are deterministic for a fixed seed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

SHAPE_NAMES = ("circle", "two_circles", "cylinder", "sphere")

TWO_CIRCLES_RADII = (1.0, 2.5)
CYLINDER_RADIUS = 1.0
CYLINDER_HEIGHT = 4.0
SPHERE_RADIUS = 1.0


@dataclass(frozen=True)
class PointCloud:
    """Immutable table of points with optional named real-valued columns."""

    points: np.ndarray
    columns: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise DataError("points must be a 2-D array with dimension >= 1")
        if pts.shape[0] < 1:
            raise DataError("point cloud is empty")
        if not np.all(np.isfinite(pts)):
            raise DataError("coordinates contain non-finite values")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        cols = {}
        for name, values in self.columns.items():
            arr = np.ascontiguousarray(values, dtype=np.float64)
            if arr.shape != (pts.shape[0],):
                raise DataError(
                    f"column {name!r} has {arr.shape[0] if arr.ndim == 1 else '?'} "
                    f"values for {pts.shape[0]} points"
                )
            if not np.all(np.isfinite(arr)):
                raise DataError(f"column {name!r} contains non-finite values")
            arr.flags.writeable = False
            cols[name] = arr
        object.__setattr__(self, "columns", cols)

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def column_names(self) -> list[str]:
        return list(self.columns)


@dataclass(frozen=True)
class FilterFunction:
    """A real-valued function over a point cloud.

    kind is one of "coordinate" (project on an axis), "column" (a named
    attribute), or "linf_norm" (max absolute coordinate per point).
    """

    kind: str
    axis: int | None = None
    name: str | None = None
    label: str = ""

    @classmethod
    def coordinate(cls, axis: int, label: str | None = None) -> "FilterFunction":
        return cls(kind="coordinate", axis=axis, label=label or f"coord{axis}")

    @classmethod
    def column(cls, name: str, label: str | None = None) -> "FilterFunction":
        return cls(kind="column", name=name, label=label or name)

    @classmethod
    def linf_norm(cls, label: str = "linf") -> "FilterFunction":
        return cls(kind="linf_norm", label=label)


def evaluate_filter(cloud: PointCloud, filt: FilterFunction) -> np.ndarray:
    """Evaluate a filter to one finite real per point."""
    if filt.kind == "coordinate":
        if filt.axis is None or not 0 <= filt.axis < cloud.dimension:
            raise DataError(f"coordinate axis {filt.axis} out of range for "
                            f"dimension {cloud.dimension}")
        return cloud.points[:, filt.axis].copy()
    if filt.kind == "column":
        if filt.name not in cloud.columns:
            raise DataError(f"unknown column {filt.name!r}")
        return cloud.columns[filt.name].copy()
    if filt.kind == "linf_norm":
        return np.abs(cloud.points).max(axis=1)
    raise DataError(f"unknown filter kind {filt.kind!r}")


def resolve_filter(cloud: PointCloud, label: str) -> FilterFunction:
    """Resolve a variable label against a cloud.

    Order: named column, then the coordinate aliases x/y/z and "coord<i>",
    then "linf" for the infinity norm.
    """
    if label in cloud.columns:
        return FilterFunction.column(label)
    aliases = {"x": 0, "y": 1, "z": 2}
    axis = aliases.get(label)
    if axis is None and label.startswith("coord"):
        try:
            axis = int(label[5:])
        except ValueError:
            axis = None
    if axis is not None and 0 <= axis < cloud.dimension:
        return FilterFunction.coordinate(axis, label=label)
    if label in ("linf", "linf_norm"):
        return FilterFunction.linf_norm(label=label)
    raise DataError(f"cannot resolve variable {label!r}")


# ---------------------------------------------------------------------------
# CSV loading / saving
# ---------------------------------------------------------------------------

def load_csv(path, coordinate_columns, attribute_columns=()) -> PointCloud:
    """Load a point cloud from a headered CSV file.

    Coordinates come from coordinate_columns in order; attribute_columns
    become named filter columns. Parsing errors report the 1-based data row
    and the column name.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        col_index = {name: i for i, name in enumerate(header)}
        wanted = list(coordinate_columns) + [
            c for c in attribute_columns if c not in coordinate_columns
        ]
        for name in wanted:
            if name not in col_index:
                raise DataError(f"{path}: missing column {name!r}")
        rows = {name: [] for name in wanted}
        for rownum, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            for name in wanted:
                idx = col_index[name]
                if idx >= len(row):
                    raise DataError(f"{path}: row {rownum} is missing column {name!r}")
                cell = row[idx].strip()
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}: non-numeric value {cell!r} at row {rownum}, "
                        f"column {name!r}"
                    ) from None
                if not math.isfinite(value):
                    raise DataError(
                        f"{path}: non-finite value {cell!r} at row {rownum}, "
                        f"column {name!r}"
                    )
                rows[name].append(value)
        n = len(rows[wanted[0]]) if wanted else 0
        if n == 0:
            raise DataError(f"{path}: no data rows")
    points = np.column_stack([np.array(rows[c]) for c in coordinate_columns])
    columns = {c: np.array(rows[c]) for c in attribute_columns}
    return PointCloud(points, columns)


def save_csv(cloud: PointCloud, path, coordinate_names=None) -> None:
    """Write a cloud back to CSV with full-precision (repr) floats."""
    if coordinate_names is None:
        defaults = ["x", "y", "z"]
        coordinate_names = [
            defaults[i] if i < 3 else f"c{i}" for i in range(cloud.dimension)
        ]
    if len(coordinate_names) != cloud.dimension:
        raise DataError("coordinate_names length does not match dimension")
    attr_names = [c for c in cloud.columns if c not in coordinate_names]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(coordinate_names) + attr_names)
        for i in range(cloud.n_points):
            row = [repr(float(v)) for v in cloud.points[i]]
            row += [repr(float(cloud.columns[c][i])) for c in attr_names]
            writer.writerow(row)


# ---------------------------------------------------------------------------
# synthetic shapes
# ---------------------------------------------------------------------------

def generate_shape(shape: str, n_points: int, noise: float = 0.0,
                   seed: int = 0) -> PointCloud:
    """Sample one of the named test shapes; deterministic per seed."""
    if shape not in SHAPE_NAMES:
        raise DataError(f"unknown shape {shape!r}; expected one of {SHAPE_NAMES}")
    if n_points < 10:
        raise DataError("n_points must be >= 10")
    if noise < 0:
        raise DataError("noise must be >= 0")
    rng = np.random.default_rng(seed)
    if shape == "circle":
        theta = rng.uniform(0.0, 2.0 * np.pi, n_points)
        pts = np.column_stack([np.cos(theta), np.sin(theta)])
    elif shape == "two_circles":
        r_in, r_out = TWO_CIRCLES_RADII
        n_in = max(1, round(n_points * r_in / (r_in + r_out)))
        n_out = n_points - n_in
        t_in = rng.uniform(0.0, 2.0 * np.pi, n_in)
        t_out = rng.uniform(0.0, 2.0 * np.pi, n_out)
        pts = np.concatenate([
            np.column_stack([r_in * np.cos(t_in), r_in * np.sin(t_in)]),
            np.column_stack([r_out * np.cos(t_out), r_out * np.sin(t_out)]),
        ])
    elif shape == "cylinder":
        theta = rng.uniform(0.0, 2.0 * np.pi, n_points)
        z = rng.uniform(-CYLINDER_HEIGHT / 2.0, CYLINDER_HEIGHT / 2.0, n_points)
        pts = np.column_stack([
            CYLINDER_RADIUS * np.cos(theta),
            CYLINDER_RADIUS * np.sin(theta),
            z,
        ])
    else:  # sphere
        raw = rng.normal(size=(n_points, 3))
        norm = np.linalg.norm(raw, axis=1)
        # resample the (measure-zero) degenerate draws
        while np.any(norm < 1e-12):
            bad = norm < 1e-12
            raw[bad] = rng.normal(size=(int(bad.sum()), 3))
            norm = np.linalg.norm(raw, axis=1)
        pts = SPHERE_RADIUS * raw / norm[:, None]
    if noise > 0:
        pts = pts + rng.normal(scale=noise, size=pts.shape)
    return PointCloud(pts)
