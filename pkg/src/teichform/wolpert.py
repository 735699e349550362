"""Intersection counting between two balanced graphs and the angle-sum pairing.

The pairing is half the sum, over surface intersection points, of the weight
product times the cosine of the counterclockwise angle from the first edge
to the second.  When the graphs meet non-transversally (shared vertices,
overlapping edges, a vertex on an edge) the second graph is moved by a small
deterministic isotopy, while the angles are still read off the original edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import MAX_PERTURB_RETRIES, PERTURB_DELTA, TOL_DEG
from .fuchsian import FuchsianGroup
from .geograph import BalancedGraph, GraphVertex
from .lifts import LiftIndex
from .mink import (
    exp_map,
    geodesic_between,
    inverse_isometry,
    lambda_matrix,
    mink_dot,
    normalize_point,
    rotate_tangent,
    signed_cos_angle,
)


class PerturbationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CrossingRecord:
    edge: int
    other_edge: int
    point: np.ndarray
    cos_theta: float
    weight_product: float
    s: float

    @property
    def contribution(self) -> float:
        return 0.5 * self.weight_product * self.cos_theta


def _tangent_of(p, e):
    w = e + mink_dot(e, p) * p
    return w / np.sqrt(mink_dot(w, w))


def perturb_graph(g: BalancedGraph, retry: int, delta=PERTURB_DELTA, salt=0) -> BalancedGraph:
    """Move each vertex a distance delta in a direction seeded by (vertex id, retry, salt)."""
    vs = []
    for v in g.vertices:
        rng = np.random.default_rng(np.random.SeedSequence([int(v.id), int(retry), int(salt)]))
        theta = 2.0 * np.pi * rng.random()
        u = rotate_tangent(v.point, _tangent_of(v.point, np.array([1.0, 0.0, 0.0])), theta)
        vs.append(GraphVertex(v.id, normalize_point(exp_map(v.point, delta * u))))
    return BalancedGraph(vs, g.edges)


def _anchored(index: LiftIndex, G, k_edge):
    return inverse_isometry(G.evaluate_word(index.beta[k_edge]))


def _count(G, g, g2_orig, g2, tol):
    """Crossing records, or None if some contact is not transverse."""
    idx2 = LiftIndex(G, g2)
    records = []
    collinear_seen = False
    for i, e in enumerate(g.edges):
        a, b = g.lift(G, e)
        x_e = geodesic_between(a, b).normal
        lifts, crossings = idx2.crossings(a, b, tol)
        for cr in crossings:
            if cr.status != _kernels.CROSS:
                return None, False
            e2 = g2.edges[cr.edge_index]
            # the same lift of the unperturbed edge
            T = lifts.transforms[cr.lift] @ _anchored(idx2, G, cr.edge_index)
            a2, b2 = g2_orig.lift(G, e2)
            oa, ob = T @ a2, T @ b2
            x2 = geodesic_between(normalize_point(oa), normalize_point(ob)).normal
            c = float(mink_dot(x_e, x2))
            p = cr.point
            u_pert = lambda_matrix(x_e) @ p
            u2_pert = lambda_matrix(lifts.X[cr.lift]) @ p
            if abs(c) >= 1.0 - 1e-9:
                collinear_seen = True
                val, _ = signed_cos_angle(p, u_pert, u2_pert, 0.0)
                cos = 1.0 if val > 0 else -1.0
            else:
                q = np.cross(x_e, x2) * np.array([1.0, 1.0, -1.0])
                q = normalize_point(q)
                cos, _ = signed_cos_angle(q, lambda_matrix(x_e) @ q, lambda_matrix(x2) @ q, 0.0)
            records.append(CrossingRecord(e.id, e2.id, p, float(cos), e.weight * e2.weight, cr.s))
    return records, collinear_seen


def surface_intersections(G: FuchsianGroup, g: BalancedGraph, g2: BalancedGraph, delta=PERTURB_DELTA,
                          salt=0, tol=TOL_DEG, retries=MAX_PERTURB_RETRIES, details=False):
    """Intersection records of g with g2, each surface crossing once, in canonical order."""
    if g.is_empty() or g2.is_empty():
        return ([], {"retries": 0, "collinear": False}) if details else []
    records, collinear = _count(G, g, g2, g2, tol)
    used = 0
    if records is None:
        for r in range(retries):
            moved = perturb_graph(g2, r, delta, salt)
            records, collinear = _count(G, g, g2, moved, tol)
            if records is not None:
                used = r + 1
                break
        else:
            raise PerturbationError(f"no transverse position after {retries} perturbations")
    records.sort(key=lambda rec: (rec.edge, rec.other_edge, rec.s))
    if details:
        return records, {"retries": used, "collinear": collinear}
    return records


def pairing_from_records(records) -> float:
    return 0.5 * float(sum(r.weight_product * r.cos_theta for r in records))


def wolpert_pairing(G: FuchsianGroup, g: BalancedGraph, g2: BalancedGraph, delta=PERTURB_DELTA, salt=0,
                    check_stability=True) -> float:
    records, info = surface_intersections(G, g, g2, delta, salt, details=True)
    value = pairing_from_records(records)
    if check_stability and info["collinear"]:
        half = pairing_from_records(surface_intersections(G, g, g2, delta / 2, salt))
        if abs(half - value) > 1e-6 * max(1.0, abs(value)):
            raise PerturbationError(f"pairing depends on the perturbation size ({value} vs {half})")
    return value
