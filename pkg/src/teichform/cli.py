"""Command line interface: ``teichform <subcommand> ...``.

Exit status is 0 on success, 1 when an input fails validation or a
computation cannot complete (a JSON report goes to stderr), and 2 for usage
errors such as an unknown subcommand.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import io
from .cohomology import CocycleError, PathError, class_distance, defect_norm, goldman_pairing, phi, relator_defect
from .config import PERTURB_DELTA, TOL_BALANCE, TOL_COCYCLE
from .fuchsian import GroupError, genus2_octagon
from .geograph import (
    ConvergenceError,
    GraphError,
    add,
    from_closed_geodesic,
    from_multicurve,
    max_defect,
    realize_triangulation,
    scalar_mul,
)
from .mess import HullError, tangent_to_graph
from .mink import GeometryError, point_from_disk
from .render import render_svg
from .wolpert import PerturbationError, pairing_from_records, surface_intersections


def fmt(x: float) -> str:
    """12 significant digits; zero is printed in fixed point."""
    x = float(x)
    if x == 0.0:
        return "0.000000000000"
    return f"{x:#.12g}"


class _Failure(Exception):
    def __init__(self, report):
        self.report = report


def _emit(key, value):
    print(f"{key} {fmt(value)}" if key else fmt(value))


# -- subcommands ----------------------------------------------------------------------


def cmd_surface_gen(args):
    G = genus2_octagon()
    io.save_group(G, args.output)
    _emit("relator_error", G.relator_error())
    _emit("area", G.domain.area())


def cmd_graph_check(args):
    G = io.load_group(args.group)
    g = io.load_graph(args.graph, G, validate=False)
    problems = io.graph_problems(G, g, args.tol)
    _emit("max_defect", max_defect(G, g) if g.vertices else 0.0)
    if problems:
        raise io.FormatError(args.graph, problems)
    print("ok")


def cmd_graph_realize(args):
    G = io.load_group(args.group)
    g = io.load_graph(args.graph, G, validate=False)
    r = realize_triangulation(G, g, tol=args.tol, max_iters=args.max_iters)
    io.save_graph(r.graph, args.output)
    print(f"iterations {r.iterations}")
    _emit("energy", r.energies[-1])
    _emit("max_defect", r.defect)


def _curve_specs(text, weight):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    out = []
    for p in parts:
        word, _, w = p.partition(":")
        out.append((word.strip(), float(w) if w else weight))
    return out


def cmd_graph_from_curve(args):
    G = io.load_group(args.group)
    specs = _curve_specs(args.curve, args.weight)
    if len(specs) == 1:
        g = from_closed_geodesic(G, specs[0][0], specs[0][1], args.n)
    else:
        g = from_multicurve(G, specs, args.n)
    io.save_graph(g, args.output)
    print(f"vertices {len(g.vertices)} edges {len(g.edges)}")
    _emit("max_defect", max_defect(G, g))


def cmd_graph_add(args):
    G = io.load_group(args.group)
    g = add(G, io.load_graph(args.first, G), io.load_graph(args.second, G))
    io.save_graph(g, args.output)
    print(f"vertices {len(g.vertices)} edges {len(g.edges)}")
    _emit("max_defect", max_defect(G, g) if g.vertices else 0.0)


def cmd_graph_scale(args):
    G = io.load_group(args.group)
    g = scalar_mul(args.factor, io.load_graph(args.graph, G))
    io.save_graph(g, args.output)
    print(f"vertices {len(g.vertices)} edges {len(g.edges)}")


def cmd_cocycle_phi(args):
    G = io.load_group(args.group)
    g = io.load_graph(args.graph, G)
    b = point_from_disk(np.array(args.basepoint)) if args.basepoint else None
    tau = phi(G, g, b)
    io.save_cocycle(tau, args.output)
    _emit("relator_defect", defect_norm(G, tau))


def cmd_cocycle_verify(args):
    G = io.load_group(args.group)
    tau = io.load_cocycle(args.cocycle)
    d = relator_defect(G, tau)
    _emit("relator_defect", float(np.linalg.norm(d)))
    if np.linalg.norm(d) >= args.tol:
        raise _Failure({"error": "not-a-cocycle", "file": args.cocycle,
                        "problems": [{"field": "values", "message": f"relator defect {np.linalg.norm(d):.3e}"}]})
    print("ok")


def cmd_pair_wolpert(args):
    G = io.load_group(args.group)
    g1, g2 = io.load_graph(args.first, G), io.load_graph(args.second, G)
    records = surface_intersections(G, g1, g2, args.delta, args.salt)
    if args.table:
        with open(args.table, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["e", "e_prime", "x1", "x2", "x3", "cos_theta", "contribution"])
            for r in records:
                w.writerow([r.edge, r.other_edge, *(fmt(c) for c in r.point), fmt(r.cos_theta), fmt(r.contribution)])
    _emit(None, pairing_from_records(records))


def cmd_pair_goldman(args):
    G = io.load_group(args.group)
    t1, t2 = io.load_cocycle(args.first, G), io.load_cocycle(args.second, G)
    _emit(None, goldman_pairing(G, t1, t2))


def cmd_mess_from_tangent(args):
    G = io.load_group(args.group)
    tau = io.load_cocycle(args.cocycle, G)
    seed = np.array(args.seed) if args.seed else None
    g, report, hull = tangent_to_graph(G, tau, args.L, seed, details=True)
    if args.hull_dump:
        with open(args.hull_dump, "w") as fh:
            fh.write(hull.to_obj())
    io.save_graph(g, args.output)
    print(f"vertices {report['vertices']} edges {report['edges']}")
    _emit("max_defect", report["max_defect"])
    if not g.is_empty():
        _emit("class_distance", class_distance(G, phi(G, g), tau))


def cmd_render(args):
    G = io.load_group(args.group)
    graphs = [io.load_graph(p, G, validate=False) for p in args.graphs]
    render_svg(G, graphs, args.output, labels=args.graphs)
    print(args.output)


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="teichform", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="subcommand")
    sub.required = True

    def command(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        return sp

    sp = command("surface-gen", cmd_surface_gen, "write the regular octagon group")
    sp.add_argument("-o", "--output", required=True)

    sp = command("graph-check", cmd_graph_check, "validate a graph file")
    sp.add_argument("group")
    sp.add_argument("graph")
    sp.add_argument("--tol", type=float, default=TOL_BALANCE)

    sp = command("graph-realize", cmd_graph_realize, "balance a weighted triangulation by energy descent")
    sp.add_argument("group")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--tol", type=float, default=TOL_BALANCE)
    sp.add_argument("--max-iters", type=int, default=100_000)

    sp = command("graph-from-curve", cmd_graph_from_curve,
                 "graph of a closed geodesic, or of 'w1:wt1,w2:wt2,...' as a multicurve")
    sp.add_argument("group")
    sp.add_argument("curve")
    sp.add_argument("weight", type=float, nargs="?", default=1.0)
    sp.add_argument("-n", type=int, default=2, help="edges per isolated curve")
    sp.add_argument("-o", "--output", required=True)

    sp = command("graph-add", cmd_graph_add, "sum of two graphs")
    sp.add_argument("group")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("-o", "--output", required=True)

    sp = command("graph-scale", cmd_graph_scale, "multiply all weights")
    sp.add_argument("group")
    sp.add_argument("graph")
    sp.add_argument("factor", type=float)
    sp.add_argument("-o", "--output", required=True)

    sp = command("cocycle-phi", cmd_cocycle_phi, "tangent cocycle of a balanced graph")
    sp.add_argument("group")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--basepoint", type=float, nargs=2, metavar=("X", "Y"), help="Poincaré disk coordinates")

    sp = command("cocycle-verify", cmd_cocycle_verify, "check the cocycle condition")
    sp.add_argument("group")
    sp.add_argument("cocycle")
    sp.add_argument("--tol", type=float, default=TOL_COCYCLE)

    sp = command("pair-wolpert", cmd_pair_wolpert, "angle-sum pairing of two graphs")
    sp.add_argument("group")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--table", metavar="CSV", help="write the crossing table")
    sp.add_argument("--delta", type=float, default=PERTURB_DELTA)
    sp.add_argument("--salt", type=int, default=0, help="isotopy seed")

    sp = command("pair-goldman", cmd_pair_goldman, "Goldman pairing of two cocycles")
    sp.add_argument("group")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = command("mess-from-tangent", cmd_mess_from_tangent, "balanced graph from a cocycle via the orbit hull")
    sp.add_argument("group")
    sp.add_argument("cocycle")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("-L", type=float, default=8.0, help="hyperbolic radius of the orbit ball")
    sp.add_argument("--seed", type=float, nargs=3, metavar=("X1", "X2", "X3"))
    sp.add_argument("--hull-dump", metavar="PATH", help="write the hull as OBJ")

    sp = command("render", cmd_render, "SVG of graphs on the octagon")
    sp.add_argument("group")
    sp.add_argument("graphs", nargs="*")
    sp.add_argument("-o", "--output", required=True)
    return p


_FAILURES = (GraphError, GroupError, CocycleError, ConvergenceError, HullError, PerturbationError,
             PathError, GeometryError, ValueError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except io.FormatError as exc:
        report = exc.report()
    except _Failure as exc:
        report = exc.report
    except _FAILURES as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
    except OSError as exc:
        report = {"error": "io", "message": str(exc), "file": exc.filename}
    else:
        return 0
    print(json.dumps(report), file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
