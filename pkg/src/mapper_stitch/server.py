"""Read-only HTTP service exposing datasets and matrix computation.

Endpoints:
  GET  /api/health                     liveness probe
  GET  /api/datasets                   loadable datasets and their variables
  GET  /api/datasets/{name}/sample     per-variable value sample (scatter plots)
  POST /api/matrix                     MatrixSpec JSON in, MatrixResult JSON out

Responses are pure functions of (dataset bytes, spec); matrix responses are
cached by the canonical spec key, and the body bytes equal what the CLI
writes for the same spec. Invalid specs get HTTP 400 with a machine-readable
reason; unknown datasets get 404. If a built frontend directory exists it is
served at the web root.
"""

from __future__ import annotations

import csv
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .dataset import SHAPE_NAMES
from .errors import DataError, SpecError, VerificationError
from .matrix import MatrixSpec, compute_matrix, serialize_matrix_result, resolve_dataset

SAMPLE_LIMIT = 5000

_SHAPE_VARIABLES = {
    "circle": ["x", "y", "linf"],
    "two_circles": ["x", "y", "linf"],
    "cylinder": ["x", "y", "z", "linf"],
    "sphere": ["x", "y", "z", "linf"],
}


def _csv_variables(path: Path) -> list[str]:
    with open(path, newline="", encoding="utf-8") as fh:
        header = next(csv.reader(fh), [])
    return [c.strip() for c in header if c.strip()]


def _dataset_listing(data_dir):
    listing = []
    if data_dir is not None:
        root = Path(data_dir)
        if root.is_dir():
            for path in sorted(root.glob("*.csv")):
                try:
                    variables = _csv_variables(path)
                except OSError:
                    continue
                listing.append({"name": path.stem, "kind": "csv",
                                "variables": variables})
    for shape in SHAPE_NAMES:
        listing.append({"name": shape, "kind": "shape",
                        "variables": _SHAPE_VARIABLES[shape]})
    return listing


def _dataset_known(name: str, data_dir) -> bool:
    if name in SHAPE_NAMES:
        return True
    candidates = [Path(name)]
    if data_dir is not None:
        candidates += [Path(data_dir) / name, Path(data_dir) / f"{name}.csv"]
    return any(p.is_file() for p in candidates)


def create_app(data_dir=None, frontend_dir=None) -> FastAPI:
    app = FastAPI(title="mapper-stitch", docs_url=None, redoc_url=None)
    cache: dict[str, bytes] = {}
    lock = threading.Lock()

    @app.get("/api/health")
    def health():
        return JSONResponse({"status": "ok"})

    @app.get("/api/datasets")
    def datasets():
        return JSONResponse({"datasets": _dataset_listing(data_dir)})

    @app.get("/api/datasets/{name}/sample")
    def dataset_sample(name: str, vars: str = "", limit: int = SAMPLE_LIMIT):
        if not _dataset_known(name, data_dir):
            return JSONResponse({"error": f"unknown dataset {name!r}"},
                                status_code=404)
        from .dataset import evaluate_filter, resolve_filter

        probe = MatrixSpec(dataset=name, variables=["_", "_"], intervals=[1, 1],
                           overlaps=[0.0, 0.0])
        cloud = resolve_dataset(probe, data_dir)
        labels = [v for v in vars.split(",") if v] or (
            _SHAPE_VARIABLES.get(name) or cloud.column_names())
        limit = max(1, min(int(limit), SAMPLE_LIMIT))
        stride = max(1, -(-cloud.n_points // limit))
        out = {}
        for label in labels:
            try:
                filt = resolve_filter(cloud, label)
            except DataError as exc:
                return JSONResponse({"error": str(exc)}, status_code=400)
            out[label] = [float(v) for v in
                          evaluate_filter(cloud, filt)[::stride]]
        return JSONResponse({"dataset": name, "variables": labels,
                             "values": out})

    @app.post("/api/matrix")
    async def matrix(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse({"error": "request body is not valid JSON"},
                                status_code=400)
        try:
            spec = MatrixSpec.from_dict(payload)
        except SpecError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        if not _dataset_known(spec.dataset, data_dir):
            return JSONResponse({"error": f"unknown dataset {spec.dataset!r}"},
                                status_code=404)
        key = spec.canonical_key()
        with lock:
            body = cache.get(key)
        if body is None:
            try:
                result = compute_matrix(spec, data_dir)
            except SpecError as exc:
                return JSONResponse({"error": str(exc)}, status_code=400)
            except DataError as exc:
                return JSONResponse({"error": str(exc)}, status_code=404)
            except VerificationError as exc:
                return JSONResponse({"error": str(exc)}, status_code=500)
            body = serialize_matrix_result(result).encode("utf-8")
            with lock:
                cache[key] = body
        return Response(content=body, media_type="application/json")

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True),
                  name="frontend")
    return app


def serve(bind: str = "127.0.0.1", port: int = 8000, data_dir=None,
          frontend_dir=None) -> None:
    """Run the service until interrupted."""
    import uvicorn

    app = create_app(data_dir=data_dir, frontend_dir=frontend_dir)
    uvicorn.run(app, host=bind, port=port, log_level="info")
