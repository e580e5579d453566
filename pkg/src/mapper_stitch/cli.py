"""Command-line interface.

  mapper-stitch gen <shape> --n-points N [--noise S] [--seed K] --out FILE
  mapper-stitch matrix --input <csv|shape> --vars a,b[,c...] [...] --out FILE
  mapper-stitch serve [--bind ADDR] [--port P] [--data DIR]

Exit codes: 0 ok, 1 usage error, 2 data error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from .dataset import SHAPE_NAMES, generate_shape, save_csv
from .errors import DataError, SpecError, VerificationError
from .gains import MEASURES, RESTRICTION_MODES
from .matrix import MatrixSpec, compute_matrix, export_json


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="mapper-stitch",
                     description="Mapper stitching and topological gains")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic shape CSV")
    gen.add_argument("shape", choices=SHAPE_NAMES)
    gen.add_argument("--n-points", type=int, default=2000)
    gen.add_argument("--noise", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    mat = sub.add_parser("matrix", help="compute a mapper-graph matrix")
    mat.add_argument("--input", required=True,
                     help="CSV path or shape name (circle, two_circles, "
                          "cylinder, sphere)")
    mat.add_argument("--vars", required=True,
                     help="comma-separated variable labels")
    mat.add_argument("--intervals", default="10",
                     help="resolution, single value or one per variable")
    mat.add_argument("--overlap", default="0.2",
                     help="overlap fraction, single value or one per variable")
    mat.add_argument("--eps", type=float, default=None,
                     help="neighborhood radius (default: 1.5x mean 5-NN distance)")
    mat.add_argument("--measure", choices=MEASURES, default="lhd0")
    mat.add_argument("--restriction", choices=RESTRICTION_MODES,
                     default="interior")
    mat.add_argument("--max-dim", type=int, default=3)
    mat.add_argument("--seed", type=int, default=0)
    mat.add_argument("--n-points", type=int, default=2000,
                     help="sample size when --input is a shape")
    mat.add_argument("--noise", type=float, default=0.0,
                     help="sampling noise when --input is a shape")
    mat.add_argument("--verify", action="store_true",
                     help="check every bivariate cell against the direct "
                          "construction")
    mat.add_argument("--include-members", action="store_true")
    mat.add_argument("--include-traces", action="store_true")
    mat.add_argument("--out", required=True)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--bind", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--data", default=None, help="directory of CSV datasets")
    srv.add_argument("--frontend", default=None,
                     help="directory of built UI assets to serve at /")
    return parser


def _run_gen(args) -> int:
    cloud = generate_shape(args.shape, args.n_points, args.noise, args.seed)
    save_csv(cloud, args.out)
    print(f"wrote {cloud.n_points} points to {args.out}")
    return 0


def _run_matrix(args) -> int:
    spec = MatrixSpec.from_dict({
        "dataset": args.input,
        "variables": [v for v in args.vars.split(",") if v],
        "intervals": [int(v) for v in str(args.intervals).split(",") if v],
        "overlap": [float(v) for v in str(args.overlap).split(",") if v],
        "epsilon": args.eps,
        "measure": args.measure,
        "restriction": args.restriction,
        "max_dim": args.max_dim,
        "seed": args.seed,
        "n_points": args.n_points,
        "noise": args.noise,
        "verify": args.verify,
        "include_members": args.include_members,
        "include_traces": args.include_traces,
    })
    result = compute_matrix(spec)
    export_json(result, args.out)
    print(f"wrote {len(result.cells)} cells to {args.out}")
    return 0


def _run_serve(args) -> int:
    from .server import serve

    serve(bind=args.bind, port=args.port, data_dir=args.data,
          frontend_dir=args.frontend)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _run_gen(args)
        if args.command == "matrix":
            return _run_matrix(args)
        return _run_serve(args)
    except (_UsageError, SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        if exc.report is not None:
            for s in exc.report.missing[:20]:
                print(f"  missing from composed: {s}", file=sys.stderr)
            for s in exc.report.extra[:20]:
                print(f"  extra in composed: {s}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
