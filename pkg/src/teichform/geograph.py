"""Balanced geodesic graphs on the genus-2 surface.

A vertex is stored by its representative in the closed fundamental octagon.
An edge from u to v with deck word d is the projection of the segment from
``point(u)`` to ``ρ(d)·point(v)``.  Weights are attached to unoriented
edges, so reversing an edge means swapping its ends and inverting the deck.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .config import TOL_BALANCE, TOL_DEG, TOL_EMBED
from .fuchsian import FuchsianGroup, GroupError, axis_of
from .lifts import LiftIndex, midpoint
from .mink import (
    GeometryError,
    distance,
    exp_map,
    geodesic_between,
    inverse_isometry,
    mink_dot,
    mink_norm2,
    normalize_point,
    tangent_toward,
    translate_along,
)
from .words import Word


class GraphError(ValueError):
    pass


class NonSimpleError(GraphError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, message, defect):
        super().__init__(message)
        self.defect = defect


@dataclass(frozen=True)
class GraphVertex:
    id: int
    point: np.ndarray


@dataclass(frozen=True)
class GraphEdge:
    id: int
    frm: int
    to: int
    deck: Word
    weight: float

    def reversed(self) -> "GraphEdge":
        return GraphEdge(self.id, self.to, self.frm, self.deck.inverse(), self.weight)


@dataclass(frozen=True, eq=False)
class BalancedGraph:
    vertices: tuple = ()
    edges: tuple = ()
    _pts: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        pts = {v.id: np.asarray(v.point, dtype=float) for v in self.vertices}
        if len(pts) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise GraphError("duplicate edge id")
        for e in self.edges:
            if e.frm not in pts or e.to not in pts:
                raise GraphError(f"edge {e.id} refers to a missing vertex")
        object.__setattr__(self, "_pts", pts)

    def point(self, vid) -> np.ndarray:
        return self._pts[vid]

    def vertex_ids(self):
        return [v.id for v in self.vertices]

    def is_empty(self) -> bool:
        return not self.edges

    def lift(self, G: FuchsianGroup, e: GraphEdge):
        """Endpoints of the edge's lift anchored at its 'from' vertex."""
        return self._pts[e.frm], G.evaluate_word(e.deck) @ self._pts[e.to]

    def total_length(self, G) -> float:
        return float(sum(distance(*self.lift(G, e)) for e in self.edges))

    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.edges])


def incident_ends(G: FuchsianGroup, g: BalancedGraph, vid):
    """(edge, far point seen from the vertex representative) for each end at vid."""
    p = g.point(vid)
    out = []
    for e in g.edges:
        if e.frm == vid:
            out.append((e, G.evaluate_word(e.deck) @ g.point(e.to)))
        if e.to == vid:
            out.append((e, G.evaluate_word(e.deck.inverse()) @ g.point(e.frm)))
    return p, out


def balance_defect(G: FuchsianGroup, g: BalancedGraph, vid) -> np.ndarray:
    p, ends = incident_ends(G, g, vid)
    total = np.zeros(3)
    for e, far in ends:
        total += e.weight * tangent_toward(p, far)
    return total


def max_defect(G, g: BalancedGraph) -> float:
    if not g.vertices:
        return 0.0
    return max(math.sqrt(max(float(mink_norm2(balance_defect(G, g, v.id))), 0.0)) for v in g.vertices)


def is_balanced(G, g, tol=TOL_BALANCE) -> bool:
    return max_defect(G, g) < tol


def check_embedded(G: FuchsianGroup, g: BalancedGraph, tol=TOL_EMBED):
    """Raise ``GraphError`` if edge interiors cross, overlap, or pass through vertices."""
    if g.is_empty():
        return
    index = LiftIndex(G, g)
    for i, e in enumerate(g.edges):
        a, b = g.lift(G, e)
        L = float(distance(a, b))
        if L <= tol:
            raise GraphError(f"edge {e.id} has zero length")
        lifts, crossings = index.crossings(a, b, tol)
        for cr in crossings:
            other = g.edges[cr.edge_index].id
            if cr.status == _kernels.CROSS:
                raise GraphError(f"edges {e.id} and {other} cross")
            if cr.status == _kernels.COLLINEAR and cr.overlap > tol:
                A, B = lifts.A[cr.lift], lifts.B[cr.lift]
                own = cr.edge_index == i and (
                    (distance(A, a) < 1e-7 and distance(B, b) < 1e-7)
                    or (distance(A, b) < 1e-7 and distance(B, a) < 1e-7)
                )
                if not own:
                    raise GraphError(f"edges {e.id} and {other} overlap")
            if cr.status == _kernels.DEGENERATE:
                t_len = 2.0 * index.half[cr.edge_index]
                if tol < cr.s < L - tol and tol < cr.t < t_len - tol:
                    raise GraphError(f"edges {e.id} and {other} touch tangentially")
        pts, _, _ = index.vertices_near(a, b)
        if len(pts):
            x = _kernels.point_segment_position(pts, *_axis_data(a, b))
            if np.any((x[0] < tol) & (x[1] > tol) & (x[2] > tol)):
                raise GraphError(f"edge {e.id} passes through a vertex")


def _axis_data(a, b):
    return geodesic_between(a, b).normal, tangent_toward(a, b), tangent_toward(b, a)


def validate_graph(G, g, tol_balance=TOL_BALANCE, tol_embed=TOL_EMBED):
    """Check domain membership, embeddedness and balance; returns per-vertex defects."""
    for v in g.vertices:
        if not G.domain.contains(v.point, 1e-9):
            raise GraphError(f"vertex {v.id} is not in the fundamental octagon")
    check_embedded(G, g, tol_embed)
    defects = {v.id: float(np.sqrt(max(mink_norm2(balance_defect(G, g, v.id)), 0.0))) for v in g.vertices}
    bad = {k: d for k, d in defects.items() if d >= tol_balance}
    if bad:
        raise GraphError(f"unbalanced vertices: {bad}")
    return defects


# -- point bookkeeping ---------------------------------------------------------


class PointRegistry:
    """Surface points by their representative in the octagon; deduplicates orbit-equivalent points."""

    def __init__(self, G: FuchsianGroup, tol=1e-7):
        self.G = G
        self.tol = tol
        self.reps = []
        self.ids = []
        _, self._near = G.near_elements()
        self._near_words = G.near_elements()[0]

    def lookup(self, p):
        """(index, word) with ρ(word)·rep[index] = p, or None."""
        q, alpha = self.G.reduce_to_domain(p)
        for k, r in enumerate(self.reps):
            if distance(r, q) > 2 * self.G.domain.circumradius + 1e-6:
                continue
            d = distance(self._near @ r, q[None, :])
            j = int(np.argmin(d))
            if d[j] < self.tol:
                return k, alpha * self._near_words[j]
        return None

    def add(self, p, vid=None):
        """Register p; returns (vertex id, word) with ρ(word)·rep = p."""
        hit = self.lookup(p)
        if hit is not None:
            return self.ids[hit[0]], hit[1]
        q, alpha = self.G.reduce_to_domain(p)
        self.reps.append(q)
        self.ids.append(len(self.ids) if vid is None else vid)
        return self.ids[-1], alpha

    def vertices(self):
        return [GraphVertex(i, r) for i, r in zip(self.ids, self.reps)]


def _renumber(vertices, edges) -> BalancedGraph:
    used = sorted({e.frm for e in edges} | {e.to for e in edges} | {v.id for v in vertices})
    vmap = {old: new for new, old in enumerate(used)}
    pts = {v.id: v.point for v in vertices}
    vs = [GraphVertex(vmap[old], pts[old]) for old in used]
    es = [GraphEdge(k, vmap[e.frm], vmap[e.to], e.deck, float(e.weight)) for k, e in enumerate(edges)]
    return BalancedGraph(vs, es)


# -- generators ---------------------------------------------------------------


def _axis_start(G, geod):
    return geod.foot(G.domain.center)


def _segment_chain(G, points, close_word):
    """Edges through points[0..n-1] and back to ρ(close_word)·points[0]."""
    reg = PointRegistry(G)
    vids, words = [], []
    for p in points:
        vid, w = reg.add(p)
        vids.append(vid)
        words.append(w)
    edges = []
    n = len(points)
    for k in range(n):
        if k + 1 < n:
            deck = words[k].inverse() * words[k + 1]
            to = vids[k + 1]
        else:
            deck = words[k].inverse() * close_word * words[0]
            to = vids[0]
        edges.append((vids[k], to, deck))
    return reg, edges


def from_closed_geodesic(G: FuchsianGroup, w, weight=1.0, n=2, check_simple=True) -> BalancedGraph:
    """The closed geodesic of ρ(w), cut into n edges of equal length."""
    w = Word.parse(w) if isinstance(w, str) else Word(w)
    if n < 1:
        raise ValueError("n must be at least 1")
    geod, length = axis_of(G.evaluate_word(w))
    q0 = _axis_start(G, geod)
    pts = [translate_along(geod, k * length / n) @ q0 for k in range(n)]
    reg, raw = _segment_chain(G, pts, w)
    if len(reg.reps) != n:
        raise NonSimpleError(f"{w} is not primitive or its geodesic revisits a vertex")
    g = BalancedGraph(reg.vertices(), [GraphEdge(k, a, b, d, float(weight)) for k, (a, b, d) in enumerate(raw)])
    if check_simple:
        _check_simple_curve(G, g)
    return g


def _check_simple_curve(G, g):
    index = LiftIndex(G, g)
    for e in g.edges:
        a, b = g.lift(G, e)
        _, crossings = index.crossings(a, b)
        for cr in crossings:
            if cr.status == _kernels.CROSS:
                raise NonSimpleError("closed geodesic is not simple")


def is_simple(G, w) -> bool:
    try:
        from_closed_geodesic(G, w, 1.0, 2)
    except NonSimpleError:
        return False
    return True


def from_multicurve(G: FuchsianGroup, curves, n=2) -> BalancedGraph:
    """Union of weighted closed geodesics with a vertex at every intersection point.

    A component that meets nothing is cut into ``n`` edges, as in
    ``from_closed_geodesic``.
    """
    curves = [(Word.parse(w) if isinstance(w, str) else Word(w), float(wt)) for w, wt in curves]
    data = []
    for w, wt in curves:
        geod, length = axis_of(G.evaluate_word(w))
        data.append((w, wt, geod, length))

    shifts = (0.0, 0.137, 0.311, 0.071, 0.453)
    for shift in shifts:
        starts = [translate_along(geod, shift * length) @ _axis_start(G, geod) for _, _, geod, length in data]
        params, ok = _curve_crossing_params(G, data, starts)
        if ok:
            break
    else:
        raise GraphError("could not place curve base points away from intersections")

    reg = PointRegistry(G)
    edges = []
    for i, (w, wt, geod, length) in enumerate(data):
        ps = sorted(params[i])
        if not ps:
            pts = [translate_along(geod, k * length / n) @ starts[i] for k in range(n)]
        else:
            pts = [translate_along(geod, s) @ starts[i] for s in ps]
        sub_reg, raw = _segment_chain(G, pts, w)
        # move everything into the shared registry
        for a, b, d in raw:
            ra, wa = reg.add(sub_reg.reps[sub_reg.ids.index(a)])
            rb, wb = reg.add(sub_reg.reps[sub_reg.ids.index(b)])
            edges.append(GraphEdge(len(edges), ra, rb, wa.inverse() * d * wb, wt))
    return _renumber(reg.vertices(), edges)


def _curve_crossing_params(G, data, starts):
    """Arclength parameters of all crossings on each fundamental segment."""
    chains = []
    for (w, wt, geod, length), q0 in zip(data, starts):
        q1 = translate_along(geod, length) @ q0
        chains.append((q0, q1))
    # one pseudo-graph whose edges are the fundamental segments
    reg = PointRegistry(G)
    vs, es = [], []
    for i, ((w, *_), (q0, q1)) in enumerate(zip(data, chains)):
        vid, a = reg.add(q0, vid=len(reg.ids))
        es.append(GraphEdge(i, vid, vid, a.inverse() * w * a, 1.0))
    g = BalancedGraph(reg.vertices(), es)
    index = LiftIndex(G, g)
    params = [[] for _ in data]
    for i, (q0, q1) in enumerate(chains):
        _, crossings = index.crossings(q0, q1)
        for cr in crossings:
            if cr.status == _kernels.CROSS:
                params[i].append(cr.s)
            elif cr.status == _kernels.COLLINEAR:
                if cr.overlap > 1e-9 and cr.edge_index != i:
                    raise GraphError("two curves share a geodesic; merge their weights instead")
                if cr.overlap > 1e-9 and cr.edge_index == i:
                    continue
            else:
                L = float(distance(q0, q1))
                t_len = _seglen(index, cr.edge_index)
                if min(cr.s, L - cr.s, cr.t, t_len - cr.t) < 1e-6:
                    # a base point sits on a crossing; caller shifts the base points
                    return None, False
                params[i].append(cr.s)
    for i in range(len(params)):
        params[i] = _dedupe_sorted(params[i])
    return params, True


def _seglen(index, i):
    return 2.0 * index.half[i]


def _dedupe_sorted(vals, tol=1e-9):
    out = []
    for v in sorted(vals):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


# -- vector space operations -------------------------------------------------


def scalar_mul(lam: float, g: BalancedGraph) -> BalancedGraph:
    return BalancedGraph(g.vertices, [replace(e, weight=lam * e.weight) for e in g.edges])


def simplify(G: FuchsianGroup, g: BalancedGraph, tol=1e-12) -> BalancedGraph:
    """Drop zero-weight edges and isolated vertices; merge straight valence-2 vertices."""
    edges = [e for e in g.edges if abs(e.weight) > tol]
    pts = {v.id: v.point for v in g.vertices}
    while True:
        merged = False
        for vid in sorted({e.frm for e in edges} | {e.to for e in edges}):
            ends = []
            for e in edges:
                if e.frm == vid:
                    ends.append((e, e.deck, e.to))
                if e.to == vid:
                    ends.append((e, e.deck.inverse(), e.frm))
            if len(ends) != 2 or ends[0][0].id == ends[1][0].id:
                continue
            (e1, w1, u1), (e2, w2, u2) = ends
            if abs(e1.weight - e2.weight) > 1e-9 * max(1.0, abs(e1.weight)):
                continue
            p = pts[vid]
            t1 = tangent_toward(p, G.evaluate_word(w1) @ pts[u1])
            t2 = tangent_toward(p, G.evaluate_word(w2) @ pts[u2])
            if mink_dot(t1, t2) > -1.0 + 1e-9:
                continue
            new = GraphEdge(max(e.id for e in edges) + 1, u1, u2, w1.inverse() * w2, e1.weight)
            edges = [e for e in edges if e.id not in (e1.id, e2.id)] + [new]
            merged = True
            break
        if not merged:
            break
    keep = {e.frm for e in edges} | {e.to for e in edges}
    return _renumber([v for v in g.vertices if v.id in keep], edges)


def add(G: FuchsianGroup, g: BalancedGraph, h: BalancedGraph, tol=TOL_EMBED) -> BalancedGraph:
    """Common refinement of two graphs with weights summed on shared pieces."""
    reg = PointRegistry(G)
    for src in (g, h):
        for v in src.vertices:
            reg.add(v.point)
    pieces = []   # (from id, to id, deck, weight, midpoint, tangent at midpoint)
    for src, other in ((g, h), (h, g)):
        if src.is_empty():
            continue
        other_index = LiftIndex(G, other) if not other.is_empty() else None
        own_index = LiftIndex(G, src)
        for e in src.edges:
            a, b = src.lift(G, e)
            L = float(distance(a, b))
            cuts = []
            if other_index is not None:
                _, crossings = other_index.crossings(a, b, 1e-10)
                for cr in crossings:
                    if cr.status in (_kernels.CROSS, _kernels.DEGENERATE) and tol < cr.s < L - tol:
                        cuts.append(cr.s)
            x, ua, ub = _axis_data(a, b)
            for index in (own_index, other_index):
                if index is None:
                    continue
                pts, _, _ = index.vertices_near(a, b)
                if len(pts):
                    d, sa, sb = _kernels.point_segment_position(pts, x, ua, ub)
                    for k in np.nonzero((d < tol) & (sa > tol) & (sb > tol))[0]:
                        cuts.append(float(sa[k]))
            cuts = [0.0] + _dedupe_sorted(cuts, tol) + [L]
            nodes = [np.cosh(s) * a + np.sinh(s) * ua for s in cuts]
            nodes[0], nodes[-1] = a, b
            ids = [reg.add(p) for p in nodes]
            for k in range(len(nodes) - 1):
                (va, wa), (vb, wb) = ids[k], ids[k + 1]
                m = midpoint(nodes[k], nodes[k + 1])
                pieces.append((va, vb, wa.inverse() * wb, e.weight, m, tangent_toward(m, nodes[k + 1])))

    # merge coincident pieces by matching their reduced midpoints
    merged = []
    mid_reg = PointRegistry(G, tol=1e-7)
    slot = {}
    for va, vb, deck, wt, m, t in pieces:
        k_before = len(mid_reg.reps)
        mid_id, mw = mid_reg.add(m)
        if len(mid_reg.reps) > k_before:
            slot[mid_id] = len(merged)
            merged.append([va, vb, deck, wt])
        else:
            merged[slot[mid_id]][3] += wt
    edges = [GraphEdge(k, va, vb, d, w) for k, (va, vb, d, w) in enumerate(merged)]
    return _renumber(reg.vertices(), edges)


# -- variational realization -------------------------------------------------


@dataclass
class Realization:
    graph: BalancedGraph
    iterations: int
    energies: list
    defect: float


def _energy(G, pts, edges):
    return sum(e.weight * float(distance(pts[e.frm], G.evaluate_word(e.deck) @ pts[e.to])) for e in edges)


def _defects(G, pts, edges, mats):
    out = {vid: np.zeros(3) for vid in pts}
    for e, (M, Minv) in zip(edges, mats):
        a, b = pts[e.frm], pts[e.to]
        out[e.frm] += e.weight * tangent_toward(a, M @ b)
        out[e.to] += e.weight * tangent_toward(b, Minv @ a)
    return out


def _exp_step(p, v):
    """exp_p(v) - p, without the cancellation of forming exp_p(v) first."""
    n = math.sqrt(max(float(mink_norm2(v)), 0.0))
    if n == 0.0:
        return np.zeros(3)
    return 2.0 * math.sinh(0.5 * n) ** 2 * p + (math.sinh(n) / n) * v


def _energy_change(pts, disp, edges, mats):
    """Exact-to-rounding change of Σ w·length when every point p moves to p + disp[p]."""
    total = 0.0
    for e, (M, _) in zip(edges, mats):
        a, b = pts[e.frm], M @ pts[e.to]
        da, db = disp[e.frm], M @ disp[e.to]
        y = -float(mink_dot(a, b))
        dy = -float(mink_dot(da, b) + mink_dot(a, db) + mink_dot(da, db))
        y2 = y + dy
        s = math.sqrt(max(y * y - 1.0, 0.0))
        s2 = math.sqrt(max(y2 * y2 - 1.0, 0.0))
        if s + s2 == 0.0:
            continue
        # arccosh(y2) - arccosh(y) = log1p((dy + s2 - s) / (y + s))
        ds = dy * (y2 + y) / (s2 + s)
        total += e.weight * math.log1p((dy + ds) / (y + s))
    return total


# below this relative size a direct energy difference is mostly rounding
_DIRECT_FLOOR = 1e-11


def _end_velocity(p, v):
    n = math.sqrt(max(float(mink_norm2(v)), 0.0))
    if n == 0.0:
        return v
    return n * math.sinh(n) * p + math.cosh(n) * v


def _energy_change_small(G, pts, disp, D, step, edges, mats):
    """Trapezoid estimate of the energy change from the gradients at both ends of each move.

    The error is third order in the step, which near the minimum is far smaller
    than the rounding in a direct difference.
    """
    new = {vid: normalize_point(p + disp[vid]) for vid, p in pts.items()}
    D2 = _defects(G, new, edges, mats)
    total = 0.0
    for vid, p in pts.items():
        v = step * D[vid]
        total += float(mink_dot(D[vid], v)) + float(mink_dot(D2[vid], _end_velocity(p, v)))
    return -0.5 * total


def realize_triangulation(G: FuchsianGroup, g: BalancedGraph, tol=TOL_BALANCE, max_iters=100_000,
                          armijo=1e-4, shrink=0.5) -> Realization:
    """Minimise Σ w·length over vertex positions with fixed deck words.

    The negative gradient at a vertex is its balance defect, so steps move each
    vertex along its defect with a backtracking line search.  Near the minimum
    a step lowers the energy by about defect², far below the rounding error of
    evaluating the energy directly, so the energy is tracked through
    separately computed per-step changes (``energies`` holds that sequence).
    """
    if any(e.weight <= 0 for e in g.edges):
        raise GraphError("realization needs positive weights")
    edges = list(g.edges)
    mats = [(G.evaluate_word(e.deck), G.evaluate_word(e.deck.inverse())) for e in edges]
    pts = {v.id: np.array(v.point, dtype=float) for v in g.vertices}
    E = _energy(G, pts, edges)
    energies = [E]
    step = 1.0
    it = 0
    while True:
        D = _defects(G, pts, edges, mats)
        norm2 = sum(max(float(mink_norm2(d)), 0.0) for d in D.values())
        worst = max(math.sqrt(max(float(mink_norm2(d)), 0.0)) for d in D.values())
        if worst < tol:
            break
        if it >= max_iters:
            raise ConvergenceError(f"no convergence after {max_iters} iterations (defect {worst:.3g})", worst)
        # no vertex moves further than half a unit per step
        step = min(step * 2.0, 0.5 / worst)
        while True:
            # dE comes from the exact displacement; renormalising only the stored point
            # keeps its rounding out of a decrease that is O(defect²)
            disp = {vid: _exp_step(p, step * D[vid]) for vid, p in pts.items()}
            dE = _energy_change(pts, disp, edges, mats)
            if abs(dE) < _DIRECT_FLOOR * max(1.0, abs(E)):
                dE = _energy_change_small(G, pts, disp, D, step, edges, mats)
            if dE <= -armijo * step * norm2:
                break
            step *= shrink
            if step < 1e-20:
                raise ConvergenceError(f"line search stalled (defect {worst:.3g})", worst)
        pts = {vid: normalize_point(p + disp[vid]) for vid, p in pts.items()}
        E = E + dE
        energies.append(E)
        it += 1

    # move the vertices back into the octagon and re-anchor the deck words
    reduced = {vid: G.reduce_to_domain(p) for vid, p in pts.items()}
    vs = [GraphVertex(vid, reduced[vid][0]) for vid in pts]
    es = [GraphEdge(e.id, e.frm, e.to, reduced[e.frm][1].inverse() * e.deck * reduced[e.to][1], e.weight)
          for e in edges]
    out = BalancedGraph(vs, es)
    return Realization(out, it, energies, max_defect(G, out))


# -- triangulation fixtures --------------------------------------------------


def octagon_vertex_words(G: FuchsianGroup):
    """η_k with ρ(η_k)·v_0 = v_k for the eight octagon corners."""
    v = G.domain.vertices
    return [G.locate(v[k], v[0]) for k in range(8)]


def one_vertex_triangulation(G: FuchsianGroup, weights=None) -> BalancedGraph:
    """Fan triangulation of the octagon from one corner: four side loops and five diagonals."""
    eta = octagon_vertex_words(G)
    v0 = G.domain.vertices[0]
    edges = []
    for k in (0, 1, 4, 5):
        edges.append((eta[k].inverse() * eta[k + 1]))
    for j in range(2, 7):
        edges.append(eta[j])
    w = np.ones(len(edges)) if weights is None else np.asarray(weights, dtype=float)
    return BalancedGraph([GraphVertex(0, v0)], [GraphEdge(i, 0, 0, d, float(w[i])) for i, d in enumerate(edges)])


def star_triangulation(G: FuchsianGroup, weights=None) -> BalancedGraph:
    """Centre joined to the eight corners, plus the four side loops at the corner vertex."""
    eta = octagon_vertex_words(G)
    dom = G.domain
    raw = [(0, 1, eta[k]) for k in range(8)]
    raw += [(1, 1, eta[k].inverse() * eta[k + 1]) for k in (0, 1, 4, 5)]
    w = np.ones(len(raw)) if weights is None else np.asarray(weights, dtype=float)
    return BalancedGraph(
        [GraphVertex(0, dom.center.copy()), GraphVertex(1, dom.vertices[0].copy())],
        [GraphEdge(i, a, b, d, float(w[i])) for i, (a, b, d) in enumerate(raw)],
    )
