"""From a tangent cocycle back to a balanced graph, through a convex surface in R^{2,1}.

The cocycle is read as the translation part of an affine action of the
surface group on Minkowski space.  The lower boundary of the convex hull of
an orbit is a spacelike polyhedral surface invariant under that action; its
face normals and edges, pushed to the hyperboloid by the Gauss map, give a
balanced graph whose cocycle class is the one we started from.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .cohomology import Cocycle, class_distance, extend, phi
from .config import TOL_BALANCE
from .fuchsian import FuchsianGroup
from .geograph import BalancedGraph, GraphEdge, PointRegistry, max_defect
from .mink import mink_dot, mink_norm2

_J = np.array([1.0, 1.0, -1.0])


class HullError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AffineRep:
    G: FuchsianGroup
    tau: Cocycle

    def translation(self, w) -> np.ndarray:
        return extend(self.G, self.tau, w)

    def apply(self, w, x) -> np.ndarray:
        return self.G.evaluate_word(w) @ x + self.translation(w)

    def closure_defect(self) -> float:
        return float(np.linalg.norm(self.translation(self.G.relator)))


def affine_orbit(rep: AffineRep, seed, L: float):
    """Orbit points ρ(γ)·seed + τ(γ) over the group ball of hyperbolic radius L.

    Returns (points, words) in the canonical order of the ball.
    """
    if L <= 0:
        raise ValueError("L must be positive")
    seed = np.asarray(seed, dtype=float)
    words, mats, _ = rep.G.ball_arrays(L)
    pts = np.einsum("nij,j->ni", mats, seed)
    trans = _translations(rep, words, mats)
    return pts + trans, words


def _translations(rep, words, mats):
    # each ball word extends its shortlex parent by one letter, so reuse the parent's value
    G, tau = rep.G, rep.tau
    index = {tuple(w): k for k, w in enumerate(words)}
    out = np.zeros((len(words), 3))
    for k, w in enumerate(words):
        if not w:
            continue
        parent = index.get(tuple(w[:-1]))
        if parent is None:
            out[k] = extend(G, tau, w)
            continue
        l = w[-1]
        v = tau.values[abs(l) - 1] if l > 0 else -(G.letter_matrix(l) @ tau.values[-l - 1])
        out[k] = out[parent] + mats[parent] @ v
    return out


@dataclass
class HullFace:
    vertices: tuple            # indices into the orbit point array
    normal: np.ndarray         # future unit timelike Minkowski normal (a point of the hyperboloid)
    offset: float              # support plane: <normal, x> = offset


@dataclass
class HullSurface:
    points: np.ndarray
    faces: list
    edges: dict                # (face i, face j) with i < j -> (point index, point index)
    dropped: int = 0
    words: list = field(default_factory=list)

    def face_neighbours(self, i):
        return [(j if a == i else a, seg) for (a, j), seg in self.edges.items() if i in (a, j)]

    def to_obj(self) -> str:
        lines = [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in self.points]
        for f in self.faces:
            lines.append("f " + " ".join(str(k + 1) for k in f.vertices))
        return "\n".join(lines) + "\n"


def _merge_coplanar(hull, keep, tol):
    """Group hull triangles lying in one plane; returns a list of triangle-index groups."""
    eq = hull.equations
    parent = list(range(len(eq)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in np.nonzero(keep)[0]:
        for j in hull.neighbors[i]:
            if keep[j] and np.max(np.abs(eq[i] - eq[j])) < tol * max(1.0, abs(eq[i, 3])):
                parent[find(i)] = find(j)
    groups = {}
    for i in np.nonzero(keep)[0]:
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def future_hull(points, coplanar_tol=1e-9) -> HullSurface:
    """Lower boundary of the convex hull, restricted to spacelike faces."""
    P = np.asarray(points, dtype=float)
    if len(P) < 4:
        raise HullError("need at least 4 points")
    try:
        hull = ConvexHull(P)
    except QhullError as exc:
        raise HullError(f"degenerate input: {exc.args[0].splitlines()[0]}") from None
    eq = hull.equations                      # a.x + b <= 0 inside, a outward unit
    lower = eq[:, 2] < 0
    groups = _merge_coplanar(hull, lower, coplanar_tol)
    faces = []
    tri_face = {}
    dropped = 0
    for grp in groups:
        a = eq[grp[0], :3]
        n = a * _J                           # <n, x> = a.x
        q = float(mink_norm2(n))
        if q >= 0:
            dropped += 1
            continue
        scale = 1.0 / np.sqrt(-q)
        verts = tuple(sorted({int(v) for t in grp for v in hull.simplices[t]}))
        fid = len(faces)
        faces.append(HullFace(verts, n * scale, float(-eq[grp[0], 3] * scale)))
        for t in grp:
            tri_face[t] = fid
    edges = {}
    for t, fid in tri_face.items():
        simplex = hull.simplices[t]
        for k, nb in enumerate(hull.neighbors[t]):
            fj = tri_face.get(int(nb))
            if fj is None or fj == fid:
                continue
            shared = tuple(sorted(int(v) for j, v in enumerate(simplex) if j != k))
            key = (min(fid, fj), max(fid, fj))
            if key in edges:
                # merged faces can share a polyline; keep the full span
                old = edges[key]
                pts = sorted(set(old) | set(shared))
                if len(pts) > 2:
                    span = max(((i, j) for i in pts for j in pts if i < j),
                               key=lambda ij: np.linalg.norm(P[ij[0]] - P[ij[1]]))
                    edges[key] = span
            else:
                edges[key] = shared
    if not faces:
        raise HullError("no spacelike faces survive; move the seed further into the future")
    return HullSurface(P, faces, edges, dropped)


def gauss_graph(G: FuchsianGroup, hull: HullSurface, tol=1e-7):
    """Balanced graph from the Gauss image of the faces whose normals land in the octagon.

    Returns (graph, report) where the report records how many edges were lost to
    truncation and the worst balance defect.
    """
    dom = G.domain
    in_domain = [i for i, f in enumerate(hull.faces) if dom.contains(f.normal, 1e-9)]
    reg = PointRegistry(G, tol)
    face_vertex = {}
    for i in in_domain:
        hit = reg.lookup(hull.faces[i].normal)
        if hit is None:
            vid, _ = reg.add(hull.faces[i].normal)
            face_vertex[i] = vid
    half_edges = []
    missing = 0
    for i, vid in face_vertex.items():
        for j, seg in hull.face_neighbours(i):
            hit = reg.lookup(hull.faces[j].normal)
            if hit is None:
                missing += 1
                continue
            k, word = hit
            d = hull.points[seg[0]] - hull.points[seg[1]]
            w = float(np.sqrt(max(float(mink_dot(d, d)), 0.0)))
            half_edges.append((vid, reg.ids[k], word, w))
    # each surface edge shows up once from each end; keep one copy
    edges = []
    seen = []
    for a, b, word, w in half_edges:
        M = G.evaluate_word(word)
        dup = False
        for a2, b2, M2 in seen:
            if (a2, b2) == (a, b) and np.max(np.abs(M2 - M)) < 1e-6 * max(1.0, np.max(np.abs(M))):
                dup = True
            elif (a2, b2) == (b, a) and np.max(np.abs(M2 @ M - np.eye(3))) < 1e-6 * max(1.0, np.max(np.abs(M)) ** 2):
                dup = True
            if dup:
                break
        if dup:
            continue
        seen.append((a, b, M))
        edges.append(GraphEdge(len(edges), a, b, word, w))
    g = BalancedGraph(reg.vertices(), edges)
    report = {"vertices": len(g.vertices), "edges": len(edges), "missing_neighbours": missing,
              "dropped_faces": hull.dropped, "max_defect": max_defect(G, g) if edges else 0.0}
    return g, report


DEFAULT_SEED = np.array([0.0, 0.0, 3.0])


def tangent_to_graph(G: FuchsianGroup, tau: Cocycle, L=8.0, seed=None, max_shifts=5, details=False):
    """Balanced graph whose cocycle class is [τ], via the Gauss map of the orbit hull."""
    seed = DEFAULT_SEED.copy() if seed is None else np.asarray(seed, dtype=float)
    rep = AffineRep(G, tau)
    last = None
    for _ in range(max_shifts):
        pts, words = affine_orbit(rep, seed, L)
        try:
            hull = future_hull(pts)
            hull.words = words
        except HullError as exc:
            last = exc
            seed = seed + np.array([0.0, 0.0, 2.0])
            continue
        # an empty graph here means the orbit is too small to contain a full star
        g, report = gauss_graph(G, hull)
        report["seed"] = seed.tolist()
        return (g, report, hull) if details else g
    raise HullError(f"no usable hull after {max_shifts} seeds: {last}")


def round_trip_distance(G, tau, L=8.0, seed=None) -> float:
    g = tangent_to_graph(G, tau, L, seed)
    return class_distance(G, phi(G, g), tau)


def is_balanced_report(report, tol=TOL_BALANCE) -> bool:
    return report["max_defect"] < tol
