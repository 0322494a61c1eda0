"""Command-line front end: ``solgeom <command> ...``.

Every command is deterministic; Monte-Carlo commands take ``--seed``.
Tabular output is CSV (17 significant digits) or JSON, one object per row.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Iterable, Sequence

from . import ball, ballcover, cylinder, reference
from .bisector import BisectorSpec, sample_bisector_mesh
from .circumsphere import Tetrahedron, circumcenter
from .core import translation_distance
from .errors import SolGeometryError
from .lattice import make_lattice, read_parameter_file
from .mesh import write_obj

DEFAULT_SEED = 20240901


def _fmt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def render(rows: Sequence[dict], fmt: str, comments: Iterable[str] = ()) -> str:
    if fmt == "json":
        return json.dumps([{k: _json_value(v) for k, v in r.items()} for r in rows], indent=2) + "\n"
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(rows[0].keys())
        for r in rows:
            writer.writerow(_fmt(v) for v in r.values())
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise SystemExit(f"error: cannot write {out}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)


def _lattices(args):
    if args.params:
        return read_parameter_file(args.params)
    if args.t11 is None or args.t12 is None or args.n is None:
        raise SystemExit("error: give --t11, --t12 and --n, or --params FILE")
    return [make_lattice(args.t11, args.t12, args.n)]


# -- commands -----------------------------------------------------------------

def cmd_distance(args) -> int:
    c = args.coords
    print(f"{translation_distance(c[:3], c[3:]):.12g}")
    return 0


def cmd_circumsphere(args) -> int:
    v = args.coords
    sph = circumcenter(Tetrahedron.of(v[0:3], v[3:6], v[6:9], v[9:12]))
    row = {"x": sph.center.x, "y": sph.center.y, "z": sph.center.z,
           "radius": sph.radius, "residual": sph.residual}
    emit(render([row], args.format), args.out)
    return 0


def cmd_ball_volume(args) -> int:
    v = ball.ball_volume(args.r, args.tol)
    row = {"radius": args.r, "volume": v, "convex": ball.is_convex_radius(args.r)}
    emit(render([row], args.format), args.out)
    return 0


def cmd_cover(args) -> int:
    rows = [ballcover.covering_density(lat, args.tol).row() for lat in _lattices(args)]
    emit(render(rows, args.format), args.out)
    return 0


def cmd_cylinder(args) -> int:
    rows = []
    for lat in _lattices(args):
        rep = cylinder.density(lat, args.mode)
        rows.append({**rep.row(), "within_bound": cylinder.check_bounds(rep)})
    emit(render(rows, args.format), args.out)
    return 0


def cmd_coverage(args) -> int:
    lat = _lattices(args)[0]
    radius = args.radius if args.radius is not None else ballcover.covering_radius(lat)[0]
    radius *= args.scale
    res = ballcover.coverage_details(lat, radius, args.samples, args.orbit_radius, args.seed,
                                     cell_only=args.cell_only)
    row = {"t11": lat.t11, "t12": lat.t12, "N": lat.n, "radius": radius,
           "samples": res.samples, "fraction": res.fraction,
           "worst_distance": res.worst_distance, "boundary_hits": res.boundary_hits}
    emit(render([row], args.format), args.out)
    return 0


def reproduce_rows(table: str, tol: float = 1e-9) -> list[dict]:
    rows = []
    for ref in reference.TABLES[table]:
        lat = make_lattice(ref.t11, ref.t12, ref.n)
        if table == "ballcover":
            rep = ballcover.covering_density(lat, tol)
        elif table == "cylpack":
            rep = cylinder.packing_density(lat)
        else:
            rep = cylinder.covering_density_cyl(lat)
        rows.append({
            "t11": ref.t11, "t12": ref.t12, "N": ref.n,
            "radius": rep.radius, "density": rep.density,
            "ref_radius": ref.radius, "ref_density": ref.density,
            "diff_radius": abs(rep.radius - ref.radius),
            "diff_density": abs(rep.density - ref.density),
        })
    return rows


def cmd_reproduce(args) -> int:
    comments = [
        f"table: {args.table}",
        "ref_* columns: published values, rounded as printed; diff_* = |computed - ref|",
    ]
    emit(render(reproduce_rows(args.table, args.tol), args.format, comments), args.out)
    return 0


def cmd_search(args) -> int:
    if args.mode == "ballcover":
        res = ballcover.search_min_density(
            (args.grid_min if args.grid_min is not None else 0.4,
             args.grid_max if args.grid_max is not None else 1.0,
             args.grid_step if args.grid_step is not None else 0.01),
            (args.t12_min, args.t12_max, args.t12_step),
            ns=args.n or (3, 4, 5), floor=args.floor, jobs=args.jobs,
        )
        grid = [r.row() for r in res.grid]
        best = res.best.row()
    else:
        mode = "packing" if args.mode == "cylpack" else "covering"
        res = cylinder.search_cylinder_optima(
            mode,
            (args.grid_min if args.grid_min is not None else 0.001,
             args.grid_max if args.grid_max is not None else 3.0,
             args.grid_step if args.grid_step is not None else 0.001),
            ns=args.n or (3,), t11=args.t11 if args.t11 is not None else 1.0, floor=args.floor,
        )
        grid = [r.row() for r in res.grid]
        best = res.best.row()
        violations = [r for r in res.grid if not cylinder.check_bounds(r)]
        if violations:
            print(f"error: {len(violations)} grid densities violate the plane-lattice bound", file=sys.stderr)
            return 1
    summary = "refined optimum: " + ", ".join(f"{k}={_fmt(v)}" for k, v in best.items())
    if args.format == "json":
        emit(json.dumps({"grid": grid, "best": best,
                         "trace": [{"params": list(p), "value": v} for p, v in res.trace]}, indent=2) + "\n",
             args.out)
        if args.out:
            print(summary)
    else:
        text = render(grid, "csv", [f"search: {args.mode}"])
        if args.out:
            emit(text, args.out)
            print(summary)
        else:
            emit(text + f"# {summary}\n", None)
    return 0


def cmd_mesh(args) -> int:
    if args.out is None:
        raise SystemExit("error: mesh needs --out PATH")
    if args.kind == "sphere":
        mesh = ball.sphere_mesh(args.r, args.resolution * 2, args.resolution)
        note = f"translation sphere r={args.r:.17g}"
    else:
        spec = BisectorSpec(tuple(args.p1), tuple(args.p2))
        box = args.box
        mesh = sample_bisector_mesh(spec, box[0::2], box[1::2], args.resolution)
        note = f"bisector of {tuple(args.p1)} and {tuple(args.p2)}"
    try:
        write_obj(mesh, args.out, note)
    except OSError as exc:
        raise SystemExit(f"error: cannot write {args.out}: {exc.strerror}") from exc
    print(f"wrote {len(mesh.vertices)} vertices, {len(mesh.faces)} faces to {args.out}")
    return 0


# -- parser -------------------------------------------------------------------

def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solgeom", description="Translation geometry of Sol space.")
    sub = p.add_subparsers(dest="command", required=True)

    def output(sp, formats=("csv", "json")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help="write to this file instead of stdout")

    def lattice(sp):
        sp.add_argument("--t11", type=float)
        sp.add_argument("--t12", type=float)
        sp.add_argument("--n", type=int, help="trace N >= 3")
        sp.add_argument("--params", help="file of 't11 t12 N' triples, one per line")

    sp = sub.add_parser("distance", help="translation distance between two points")
    sp.add_argument("coords", type=float, nargs=6, metavar="C")
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("circumsphere", help="circumscribed sphere of a tetrahedron (12 coordinates)")
    sp.add_argument("coords", type=float, nargs=12, metavar="C")
    output(sp)
    sp.set_defaults(func=cmd_circumsphere)

    sp = sub.add_parser("ball-volume", help="volume of a translation ball")
    sp.add_argument("r", type=_positive)
    sp.add_argument("--tol", type=_positive, default=1e-9)
    output(sp)
    sp.set_defaults(func=cmd_ball_volume)

    sp = sub.add_parser("cover", help="ball covering radius and density of lattices")
    lattice(sp)
    sp.add_argument("--tol", type=_positive, default=1e-9)
    output(sp)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("cylinder", help="cylinder packing or covering of lattices")
    sp.add_argument("mode", choices=("packing", "covering"))
    lattice(sp)
    output(sp)
    sp.set_defaults(func=cmd_cylinder)

    sp = sub.add_parser("coverage", help="Monte-Carlo check of a ball covering")
    lattice(sp)
    sp.add_argument("--radius", type=_positive, help="default: computed covering radius")
    sp.add_argument("--scale", type=_positive, default=1.0, help="multiply the radius by this")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--orbit-radius", type=int, default=2)
    sp.add_argument("--cell-only", action="store_true", help="balls only at the 8 cell vertices")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    output(sp)
    sp.set_defaults(func=cmd_coverage)

    sp = sub.add_parser("reproduce", help="recompute a published density table")
    sp.add_argument("table", choices=sorted(reference.TABLES))
    sp.add_argument("--tol", type=_positive, default=1e-9)
    output(sp)
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("search", help="grid search plus coordinate-descent refinement")
    sp.add_argument("mode", choices=("ballcover", "cylpack", "cylcover"))
    sp.add_argument("--grid-min", type=float, help="t11 (ballcover) or t12 (cylinders)")
    sp.add_argument("--grid-max", type=float)
    sp.add_argument("--grid-step", type=_positive)
    sp.add_argument("--t12-min", type=float, default=0.1, help="ballcover only")
    sp.add_argument("--t12-max", type=float, default=0.3)
    sp.add_argument("--t12-step", type=_positive, default=0.01)
    sp.add_argument("--t11", type=float, help="fixed t11 for cylinder searches (default 1)")
    sp.add_argument("--n", type=int, nargs="+", help="traces to search")
    sp.add_argument("--floor", type=_positive, default=1e-4)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="accepted for uniformity; searches are deterministic")
    output(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("mesh", help="export a sphere or bisector surface as OBJ")
    sp.add_argument("kind", choices=("sphere", "bisector"))
    sp.add_argument("--r", type=_positive, default=math.pi / 4)
    sp.add_argument("--p1", type=float, nargs=3, default=(0.0, 0.0, 0.0))
    sp.add_argument("--p2", type=float, nargs=3, default=(1.0, 0.0, 0.0))
    sp.add_argument("--box", type=float, nargs=6, default=(-1.5, 1.5, -1.5, 1.5, -1.5, 1.5),
                    metavar=("XMIN", "XMAX", "YMIN", "YMAX", "ZMIN", "ZMAX"))
    sp.add_argument("--resolution", type=int, default=32)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_mesh)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SolGeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
