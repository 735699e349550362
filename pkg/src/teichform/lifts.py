"""Finding the translates of graph edges and vertices near a segment of the universal cover.

Every edge gets a canonical lift whose midpoint lies in the fundamental
octagon.  A translate ρ(γ)·lift can only come within R of a point q when
ρ(γ) moves the octagon centre by at most R + (half length) + (the two
offsets from the centre), so one ball enumeration around the reduced query
covers every candidate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import SEARCH_MARGIN, TOL_DEG
from .fuchsian import FuchsianGroup
from .mink import (
    distance,
    geodesic_between,
    inverse_isometry,
    normalize_point,
    tangent_toward,
)
from .words import Word


def midpoint(a, b):
    return normalize_point(a + b)


@dataclass
class SegmentLifts:
    """Candidate translates of canonical edge lifts near one query segment."""

    edge_index: np.ndarray      # (K,) index into the graph's edge tuple
    transforms: np.ndarray      # (K, 3, 3) ρ(γ) carrying the canonical lift to this one
    A: np.ndarray
    B: np.ndarray
    X: np.ndarray
    UA: np.ndarray
    UB: np.ndarray
    _alpha: Word
    _eta: list

    def word(self, k) -> Word:
        """γ with ρ(γ)·(canonical lift) equal to lift k."""
        return self._alpha * self._eta[k]

    def __len__(self):
        return len(self.edge_index)


@dataclass
class Crossing:
    edge_index: int
    lift: int                   # index into the SegmentLifts it came from
    status: int
    point: np.ndarray
    s: float                    # arclength along the query from its start
    t: float                    # arclength along the edge lift from its start
    overlap: float


class LiftIndex:
    """Canonical lifts of the edges (and vertices) of one graph."""

    def __init__(self, G: FuchsianGroup, graph):
        self.G = G
        self.graph = graph
        dom = G._require_domain()
        c = dom.center
        pts = {v.id: v.point for v in graph.vertices}
        n = len(graph.edges)
        self.A = np.zeros((n, 3))
        self.B = np.zeros((n, 3))
        self.X = np.zeros((n, 3))
        self.UA = np.zeros((n, 3))
        self.UB = np.zeros((n, 3))
        self.M = np.zeros((n, 3))
        self.half = np.zeros(n)
        self.offset = np.zeros(n)
        self.beta = []
        for i, e in enumerate(graph.edges):
            a = pts[e.frm]
            b = G.evaluate_word(e.deck) @ pts[e.to]
            m, beta = G.reduce_to_domain(midpoint(a, b))
            binv = inverse_isometry(G.evaluate_word(beta))
            a2, b2 = normalize_point(binv @ a), normalize_point(binv @ b)
            self.A[i], self.B[i] = a2, b2
            self.X[i] = geodesic_between(a2, b2).normal
            self.UA[i] = tangent_toward(a2, b2)
            self.UB[i] = tangent_toward(b2, a2)
            self.M[i] = m
            self.half[i] = 0.5 * float(distance(a2, b2))
            self.offset[i] = float(distance(m, c))
            self.beta.append(beta)
        self.vertex_ids = [v.id for v in graph.vertices]
        self.V = np.array([v.point for v in graph.vertices]).reshape(-1, 3)
        self.voffset = distance(self.V, c[None, :]) if len(self.V) else np.zeros(0)

    def original_word(self, edge_index, gamma: Word) -> Word:
        """Word δ with lift = ρ(δ)·(edge lift anchored at its 'from' vertex)."""
        return gamma * self.beta[edge_index].inverse()

    def _query(self, a, b, extra):
        G = self.G
        c = G.domain.center
        q, alpha = G.reduce_to_domain(midpoint(a, b))
        R = 0.5 * float(distance(a, b)) + extra
        return q, alpha, R, float(distance(q, c))

    def edges_near(self, a, b, extra=0.0) -> SegmentLifts:
        """Translates of edge lifts that may meet the segment [a, b] (or its extra-neighbourhood)."""
        n = len(self.half)
        if n == 0:
            z = np.zeros((0, 3))
            return SegmentLifts(np.zeros(0, int), np.zeros((0, 3, 3)), z, z, z, z, z, Word(), [])
        q, alpha, R, qoff = self._query(a, b, extra)
        radius = R + float(np.max(self.half + self.offset)) + qoff + SEARCH_MARGIN
        words, mats, _ = self.G.ball_arrays(radius)
        imgs = np.einsum("nij,ej->nei", mats, self.M)
        d = distance(imgs, q[None, None, :])
        ok = d <= (R + self.half + SEARCH_MARGIN)[None, :]
        ni, ei = np.nonzero(ok)
        ga = self.G.evaluate_word(alpha)
        T = ga @ mats[ni]
        return SegmentLifts(
            ei,
            T,
            np.einsum("kij,kj->ki", T, self.A[ei]),
            np.einsum("kij,kj->ki", T, self.B[ei]),
            np.einsum("kij,kj->ki", T, self.X[ei]),
            np.einsum("kij,kj->ki", T, self.UA[ei]),
            np.einsum("kij,kj->ki", T, self.UB[ei]),
            alpha,
            [words[k] for k in ni],
        )

    def vertices_near(self, a, b, radius_extra=0.0):
        """(points, vertex ids, words) for vertex lifts within the query's neighbourhood."""
        if len(self.V) == 0:
            return np.zeros((0, 3)), [], []
        q, alpha, R, qoff = self._query(a, b, radius_extra)
        radius = R + float(np.max(self.voffset)) + qoff + SEARCH_MARGIN
        words, mats, _ = self.G.ball_arrays(radius)
        imgs = np.einsum("nij,vj->nvi", mats, self.V)
        d = distance(imgs, q[None, None, :])
        ni, vi = np.nonzero(d <= R + SEARCH_MARGIN)
        ga = self.G.evaluate_word(alpha)
        pts = np.einsum("ij,kj->ki", ga, imgs[ni, vi])
        return pts, [self.vertex_ids[k] for k in vi], [alpha * words[k] for k in ni]

    def crossings(self, a, b, tol=TOL_DEG):
        """All contacts of the segment [a, b] with edge lifts, sorted by position along it."""
        lifts = self.edges_near(a, b)
        if len(lifts) == 0:
            return lifts, []
        x = geodesic_between(a, b).normal
        ua, ub = tangent_toward(a, b), tangent_toward(b, a)
        status, P, sq, sc = _kernels.segment_crossings(
            a, x, ua, ub, float(distance(a, b)), lifts.A, lifts.B, lifts.X, lifts.UA, lifts.UB, tol
        )
        out = []
        for k in np.nonzero(status)[0]:
            col = status[k] == _kernels.COLLINEAR
            out.append(Crossing(int(lifts.edge_index[k]), int(k), int(status[k]), P[k].copy(),
                                0.0 if col else float(sq[k]), float(sc[k]), float(sq[k]) if col else 0.0))
        out.sort(key=lambda cr: (cr.s, cr.edge_index, cr.lift))
        return lifts, out
