"""JSON readers and writers for groups, graphs and cocycles.

Every file carries a versioned ``format`` field.  Readers check the shape of
each field and then the mathematical invariants, raising ``FormatError``
with a list of field-level problems.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .cohomology import Cocycle, defect_norm
from .config import TOL_BALANCE, TOL_COCYCLE, TOL_EMBED
from .fuchsian import FuchsianGroup, GroupError, genus2_octagon
from .geograph import BalancedGraph, GraphEdge, GraphError, GraphVertex, check_embedded, max_defect
from .words import GENERATOR_NAMES, Word

GROUP_FORMAT = "teichform.group/1"
GRAPH_FORMAT = "teichform.graph/1"
COCYCLE_FORMAT = "teichform.cocycle/1"


class FormatError(ValueError):
    """Malformed or invalid input file; ``problems`` lists (field, message) pairs."""

    def __init__(self, what, problems):
        self.what = what
        self.problems = list(problems)
        super().__init__(f"invalid {what}: " + "; ".join(f"{f}: {m}" for f, m in self.problems))

    def report(self) -> dict:
        return {"error": "invalid-input", "file": self.what,
                "problems": [{"field": f, "message": m} for f, m in self.problems]}


def _read(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(str(path), [("", exc.strerror or str(exc))]) from None
    except json.JSONDecodeError as exc:
        raise FormatError(str(path), [("", f"not JSON: {exc.msg} at line {exc.lineno}")]) from None


def _write(path, obj):
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def _check_format(obj, expected, problems):
    if not isinstance(obj, dict):
        problems.append(("", "top level must be an object"))
        return False
    fmt = obj.get("format")
    if fmt is not None and fmt != expected:
        problems.append(("format", f"expected {expected!r}, got {fmt!r}"))
    return True


def _vector(x, n, field, problems):
    if not isinstance(x, list) or len(x) != n:
        problems.append((field, f"expected a list of {n} numbers"))
        return None
    try:
        v = np.array([float(t) for t in x])
    except (TypeError, ValueError):
        problems.append((field, "entries must be numbers"))
        return None
    if not np.all(np.isfinite(v)):
        problems.append((field, "entries must be finite"))
        return None
    return v


# -- groups ----------------------------------------------------------------------


def group_to_dict(G: FuchsianGroup) -> dict:
    return {"format": GROUP_FORMAT, "genus": G.genus,
            "generators": [g.tolist() for g in G.generators], "relator": str(G.relator)}


def group_from_dict(obj, name="group") -> FuchsianGroup:
    problems = []
    if not _check_format(obj, GROUP_FORMAT, problems):
        raise FormatError(name, problems)
    if obj.get("genus") != 2:
        problems.append(("genus", "only genus 2 is supported"))
    gens = obj.get("generators")
    mats = []
    if not isinstance(gens, list) or len(gens) != 4:
        problems.append(("generators", "expected four 3x3 matrices"))
    else:
        for i, m in enumerate(gens):
            rows = [_vector(r, 3, f"generators[{i}][{j}]", problems) for j, r in enumerate(m)] \
                if isinstance(m, list) and len(m) == 3 else None
            if rows is None:
                problems.append((f"generators[{i}]", "expected a 3x3 matrix"))
            elif all(r is not None for r in rows):
                mats.append(np.stack(rows))
    try:
        relator = Word.parse(obj.get("relator", ""))
    except (ValueError, AttributeError) as exc:
        problems.append(("relator", str(exc)))
        relator = None
    if problems:
        raise FormatError(name, problems)
    gens = np.stack(mats)
    # the standard octagon group gets its fundamental domain back
    std = genus2_octagon()
    domain = std.domain if np.max(np.abs(gens - std.generators)) < 1e-9 and relator == std.relator else None
    G = FuchsianGroup(gens, relator, domain)
    try:
        G.validate()
    except GroupError as exc:
        raise FormatError(name, [("generators", str(exc))]) from None
    return G


def save_group(G, path):
    _write(path, group_to_dict(G))


def load_group(path) -> FuchsianGroup:
    return group_from_dict(_read(path), str(path))


# -- graphs ------------------------------------------------------------------------


def graph_to_dict(g: BalancedGraph) -> dict:
    return {
        "format": GRAPH_FORMAT,
        "vertices": [{"id": v.id, "point": np.asarray(v.point).tolist()} for v in g.vertices],
        "edges": [{"id": e.id, "from": e.frm, "to": e.to, "deck": str(e.deck), "weight": e.weight}
                  for e in g.edges],
    }


def graph_from_dict(obj, G: FuchsianGroup | None = None, name="graph", validate=True,
                    tol_balance=TOL_BALANCE) -> BalancedGraph:
    """Parse a graph; with a group, also check domain membership, embedding and balance."""
    problems = []
    if not _check_format(obj, GRAPH_FORMAT, problems):
        raise FormatError(name, problems)
    verts, edges = [], []
    raw_v, raw_e = obj.get("vertices"), obj.get("edges")
    if not isinstance(raw_v, list):
        problems.append(("vertices", "expected a list"))
        raw_v = []
    if not isinstance(raw_e, list):
        problems.append(("edges", "expected a list"))
        raw_e = []
    for i, v in enumerate(raw_v):
        f = f"vertices[{i}]"
        if not isinstance(v, dict) or not isinstance(v.get("id"), int):
            problems.append((f + ".id", "expected an integer id"))
            continue
        p = _vector(v.get("point"), 3, f + ".point", problems)
        if p is not None:
            verts.append(GraphVertex(v["id"], p))
    for i, e in enumerate(raw_e):
        f = f"edges[{i}]"
        if not isinstance(e, dict):
            problems.append((f, "expected an object"))
            continue
        bad = [k for k in ("id", "from", "to") if not isinstance(e.get(k), int)]
        for k in bad:
            problems.append((f"{f}.{k}", "expected an integer"))
        try:
            deck = Word.parse(e.get("deck", ""))
        except (ValueError, AttributeError) as exc:
            problems.append((f + ".deck", str(exc)))
            continue
        w = e.get("weight")
        if not isinstance(w, (int, float)) or isinstance(w, bool) or not math.isfinite(w):
            problems.append((f + ".weight", "expected a finite number"))
            continue
        if not bad:
            edges.append(GraphEdge(e["id"], e["from"], e["to"], deck, float(w)))
    if problems:
        raise FormatError(name, problems)
    try:
        g = BalancedGraph(verts, edges)
    except GraphError as exc:
        raise FormatError(name, [("edges", str(exc))]) from None
    if G is not None and validate:
        problems.extend(graph_problems(G, g, tol_balance))
        if problems:
            raise FormatError(name, problems)
    return g


def graph_problems(G, g, tol_balance=TOL_BALANCE, tol_embed=TOL_EMBED):
    """Field-level list of invariant violations (empty when the graph is valid)."""
    out = []
    for i, v in enumerate(g.vertices):
        if abs(float(v.point[0] ** 2 + v.point[1] ** 2 - v.point[2] ** 2) + 1.0) > 1e-8 or v.point[2] <= 0:
            out.append((f"vertices[{i}].point", "not on the hyperboloid"))
        elif not G.domain.contains(v.point, 1e-9):
            out.append((f"vertices[{i}].point", "outside the fundamental octagon"))
    if out:
        return out
    if any(e.weight < 0 for e in g.edges):
        out.append(("edges", "weights must be nonnegative"))
    try:
        check_embedded(G, g, tol_embed)
    except GraphError as exc:
        out.append(("edges", f"not embedded: {exc}"))
    d = max_defect(G, g)
    if d >= tol_balance:
        out.append(("vertices", f"balance defect {d:.3e} exceeds {tol_balance:g}"))
    return out


def save_graph(g, path):
    _write(path, graph_to_dict(g))


def load_graph(path, G=None, validate=True) -> BalancedGraph:
    return graph_from_dict(_read(path), G, str(path), validate)


# -- cocycles ----------------------------------------------------------------------


def cocycle_to_dict(tau: Cocycle) -> dict:
    return {"format": COCYCLE_FORMAT, "values": tau.as_dict()}


def cocycle_from_dict(obj, G: FuchsianGroup | None = None, name="cocycle", tol=TOL_COCYCLE) -> Cocycle:
    problems = []
    if not _check_format(obj, COCYCLE_FORMAT, problems):
        raise FormatError(name, problems)
    vals = obj.get("values")
    rows = []
    if not isinstance(vals, dict):
        problems.append(("values", "expected an object keyed by generator name"))
    else:
        for k in GENERATOR_NAMES:
            if k not in vals:
                problems.append((f"values.{k}", "missing"))
            else:
                rows.append(_vector(vals[k], 3, f"values.{k}", problems))
        for k in vals:
            if k not in GENERATOR_NAMES:
                problems.append((f"values.{k}", "unknown generator"))
    if problems:
        raise FormatError(name, problems)
    tau = Cocycle(np.stack(rows))
    if G is not None:
        d = defect_norm(G, tau)
        if d >= tol:
            raise FormatError(name, [("values", f"relator defect {d:.3e} exceeds {tol:g}")])
    return tau


def save_cocycle(tau, path):
    _write(path, cocycle_to_dict(tau))


def load_cocycle(path, G=None) -> Cocycle:
    return cocycle_from_dict(_read(path), G, str(path))
