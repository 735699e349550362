"""Cocycles of the surface group with values in so(2,1), and the map from graphs to them.

A cocycle is stored by its values on a1, b1, a2, b2 as Λ-vectors.  The
relator imposes three linear conditions, so cocycles form a 9-dimensional
space containing the 3-dimensional space of coboundaries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import _kernels
from .config import MAX_PERTURB_RETRIES, TOL_COCYCLE, TOL_DEG
from .fuchsian import FuchsianGroup, GroupError
from .geograph import BalancedGraph, NonSimpleError, from_closed_geodesic
from .lifts import LiftIndex
from .mink import (
    Geodesic,
    distance,
    exp_map,
    geodesic_between,
    inverse_isometry,
    killing,
    lambda_matrix,
    mink_norm2,
    normalize_spacelike,
    point_from_disk,
    tangent_toward,
    translate_along,
)
from .words import GENERATOR_NAMES, Word


class CocycleError(ValueError):
    pass


class PathError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Cocycle:
    values: np.ndarray  # (4, 3)

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(4, 3)
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls):
        return cls(np.zeros((4, 3)))

    @classmethod
    def from_flat(cls, x):
        return cls(np.asarray(x, dtype=float).reshape(4, 3))

    def flat(self) -> np.ndarray:
        return self.values.reshape(12).copy()

    def __add__(self, other):
        return Cocycle(self.values + other.values)

    def __sub__(self, other):
        return Cocycle(self.values - other.values)

    def __mul__(self, lam):
        return Cocycle(lam * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return Cocycle(-self.values)

    def as_dict(self):
        return {name: self.values[i].tolist() for i, name in enumerate(GENERATOR_NAMES)}


def _letter_value(G, tau: Cocycle, letter):
    v = tau.values[abs(letter) - 1]
    if letter > 0:
        return v
    return -(G.letter_matrix(letter) @ v)


def extend(G: FuchsianGroup, tau: Cocycle, w) -> np.ndarray:
    """τ on an arbitrary word, from τ(γη) = τ(γ) + Ad ρ(γ)·τ(η)."""
    w = Word.parse(w) if isinstance(w, str) else w
    val = np.zeros(3)
    M = np.eye(3)
    for l in w:
        val = val + M @ _letter_value(G, tau, l)
        M = M @ G.letter_matrix(l)
    return val


def coboundary(G: FuchsianGroup, tau0) -> Cocycle:
    tau0 = np.asarray(tau0, dtype=float)
    return Cocycle(np.stack([G.generators[i] @ tau0 - tau0 for i in range(4)]))


def relator_defect(G: FuchsianGroup, tau: Cocycle) -> np.ndarray:
    return extend(G, tau, G.relator)


def defect_norm(G, tau) -> float:
    return float(np.linalg.norm(relator_defect(G, tau)))


def constraint_matrix(G: FuchsianGroup) -> np.ndarray:
    """3 x 12 matrix C with C @ τ.flat() = relator_defect(τ)."""
    cols = []
    for k in range(12):
        e = np.zeros(12)
        e[k] = 1.0
        cols.append(relator_defect(G, Cocycle.from_flat(e)))
    return np.stack(cols, axis=1)


def coboundary_matrix(G: FuchsianGroup) -> np.ndarray:
    """12 x 3 matrix B with B @ τ0 = coboundary(τ0).flat()."""
    return np.stack([coboundary(G, e).flat() for e in np.eye(3)], axis=1)


def numeric_rank(m, tol=1e-7) -> int:
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0] if len(s) else 0.0)))


def cocycle_basis(G) -> np.ndarray:
    """Orthonormal basis of Z¹ as the rows of a (9, 12) array."""
    C = constraint_matrix(G)
    _, s, vh = np.linalg.svd(C)
    r = int(np.sum(s > 1e-7 * s[0]))
    return vh[r:]


def cohomology_basis(G) -> np.ndarray:
    """Orthonormal rows spanning the complement of B¹ inside Z¹ (a model of H¹)."""
    Z = cocycle_basis(G)
    B = coboundary_matrix(G)
    q, _ = np.linalg.qr(B)
    P = Z - (Z @ q) @ q.T
    u, s, vh = np.linalg.svd(P)
    r = int(np.sum(s > 1e-7 * s[0]))
    return vh[:r]


def random_cocycle(G: FuchsianGroup, seed=0) -> Cocycle:
    rng = np.random.default_rng(seed)
    Z = cocycle_basis(G)
    x = rng.standard_normal(Z.shape[0]) @ Z
    return Cocycle.from_flat(x / np.linalg.norm(x))


def class_distance(G: FuchsianGroup, tau: Cocycle, tau2: Cocycle) -> float:
    """Distance from τ2 − τ to the coboundary space, in the 12 coordinates."""
    B = coboundary_matrix(G)
    r = tau2.flat() - tau.flat()
    x, *_ = np.linalg.lstsq(B, r, rcond=None)
    return float(np.linalg.norm(r - B @ x))


def _require_cocycle(G, tau, tol):
    d = defect_norm(G, tau)
    if d >= tol:
        raise CocycleError(f"relator defect {d:.3g} exceeds {tol:.1g}")


def goldman_raw(G: FuchsianGroup, tau: Cocycle, tau2: Cocycle) -> float:
    """Cup product evaluated on the 2-chain built from the relator's prefixes."""
    total = 0.0
    prefix = Word()
    M = np.eye(3)
    for l in G.relator:
        if l > 0:
            total += killing(extend(G, tau, prefix), M @ tau2.values[l - 1])
            prefix = prefix * Word((l,))
            M = M @ G.letter_matrix(l)
        else:
            prefix = prefix * Word((l,))
            M = M @ G.letter_matrix(l)
            total -= killing(extend(G, tau, prefix), M @ tau2.values[-l - 1])
    return float(total)


def _reference_sign() -> float:
    raw = json.loads(resources.files("teichform").joinpath("data/goldman_reference.json").read_text())
    from .fuchsian import genus2_octagon

    G = genus2_octagon()
    t1 = Cocycle.from_flat([raw["first"][n] for n in GENERATOR_NAMES])
    t2 = Cocycle.from_flat([raw["second"][n] for n in GENERATOR_NAMES])
    v = goldman_raw(G, t1, t2)
    if abs(v) < 1e-6:
        raise RuntimeError("reference pair does not fix an orientation")
    return 1.0 if v > 0 else -1.0


_SIGN = None


def goldman_pairing(G: FuchsianGroup, tau: Cocycle, tau2: Cocycle, tol=TOL_COCYCLE) -> float:
    """Goldman pairing, oriented to be positive on the shipped reference pair."""
    global _SIGN
    _require_cocycle(G, tau, tol)
    _require_cocycle(G, tau2, tol)
    if _SIGN is None:
        _SIGN = _reference_sign()
    return _SIGN * goldman_raw(G, tau, tau2)


def pairing_matrix(G, basis) -> np.ndarray:
    cs = [Cocycle.from_flat(b) for b in basis]
    return np.array([[goldman_pairing(G, a, b) for b in cs] for a in cs])


# -- from graphs to cocycles ------------------------------------------------

DEFAULT_BASEPOINT = point_from_disk(np.array([0.0731, 0.0419]))


@dataclass
class PathCrossing:
    edge_index: int
    point: np.ndarray
    normal: np.ndarray      # signed so the translation points to the left of the path
    weight: float
    segment: int
    s: float


def _contacts_at_point(index: LiftIndex, p, tol):
    """True when p lies within tol of some edge lift."""
    lifts = index.edges_near(p, p, extra=1e-3)
    if len(lifts) == 0:
        return False
    J = np.array([1.0, 1.0, -1.0])
    d = np.abs(lifts.X @ (p * J))
    foot = p[None, :] - (lifts.X @ (p * J))[:, None] * lifts.X
    n2 = -(foot[:, 0] ** 2 + foot[:, 1] ** 2 - foot[:, 2] ** 2)
    foot = foot / np.sqrt(np.maximum(n2, 1e-300))[:, None]
    sa = np.arcsinh(np.einsum("ij,ij->i", foot * J, lifts.UA))
    sb = np.arcsinh(np.einsum("ij,ij->i", foot * J, lifts.UB))
    return bool(np.any((d < tol) & (sa > -tol) & (sb > -tol)))


def polyline_crossings(index: LiftIndex, pts, tol=TOL_DEG):
    """Signed crossings of a polyline with the graph, in order along the path.

    Raises ``PathError`` if the path is not transverse to the graph.
    """
    out = []
    weights = [e.weight for e in index.graph.edges]
    for k in range(len(pts) - 1):
        a, b = pts[k], pts[k + 1]
        if distance(a, b) < 1e-14:
            continue
        lifts, crossings = index.crossings(a, b, tol)
        xq = geodesic_between(a, b).normal
        for cr in crossings:
            if cr.status != _kernels.CROSS:
                raise PathError("path meets the graph non-transversally")
            x = lifts.X[cr.lift]
            p = cr.point
            d = lambda_matrix(xq) @ p
            u = lambda_matrix(x) @ p
            # keep the translation direction on the left of the path: det[p u d] < 0
            sign = np.linalg.det(np.column_stack([p, u, d]))
            out.append(PathCrossing(cr.edge_index, p, -x if sign > 0 else x, weights[cr.edge_index], k, cr.s))
    return out


def path_value(index: LiftIndex, pts, tol=TOL_DEG) -> np.ndarray:
    total = np.zeros(3)
    for cr in polyline_crossings(index, pts, tol):
        total += cr.weight * cr.normal
    return total


def _perturbed_paths(b, target, retries):
    yield [b, target]
    m = 0.5 * (b + target)
    m = m / np.sqrt(-mink_norm2(m))
    u = tangent_toward(m, target)
    # quarter turn of u at m
    w = np.cross(m, u) * np.array([1.0, 1.0, -1.0])
    w = w / np.sqrt(mink_norm2(w))
    for k in range(retries):
        size = 1e-3 * (1 + k // 2) * (1.0 + 0.37 * k)
        sgn = 1.0 if k % 2 == 0 else -1.0
        corner = exp_map(m, sgn * size * w + 0.01 * size * u)
        yield [b, corner, target]


def generator_paths(G: FuchsianGroup, index: LiftIndex, basepoint, tol=TOL_DEG, retries=MAX_PERTURB_RETRIES):
    """For each generator, a polyline from the basepoint to its image, transverse to the graph."""
    paths = []
    for i in range(4):
        target = G.generators[i] @ basepoint
        for pts in _perturbed_paths(basepoint, target, retries):
            try:
                polyline_crossings(index, pts, tol)
            except PathError:
                continue
            paths.append(pts)
            break
        else:
            raise PathError(f"no transverse path for generator {GENERATOR_NAMES[i]} after {retries} retries")
    return paths


def resolve_basepoint(G, index: LiftIndex, basepoint=None, tol=TOL_DEG):
    b = DEFAULT_BASEPOINT.copy() if basepoint is None else np.asarray(basepoint, dtype=float)
    c = G.domain.center
    for _ in range(100):
        if not _contacts_at_point(index, b, tol):
            return b
        # nudge toward the octagon centre
        b = exp_map(b, 1e-5 * tangent_toward(b, c)) if distance(b, c) > 1e-5 else exp_map(b, 1e-5 * np.array([1.0, 0.0, 0.0]))
    raise PathError("could not move the basepoint off the graph")


def phi(G: FuchsianGroup, g: BalancedGraph, basepoint=None, tol=TOL_DEG) -> Cocycle:
    """The cocycle of a balanced graph: weighted translations along crossed edge lifts."""
    if g.is_empty():
        return Cocycle.zero()
    index = LiftIndex(G, g)
    b = resolve_basepoint(G, index, basepoint, tol)
    paths = generator_paths(G, index, b, tol)
    return Cocycle(np.stack([path_value(index, pts, tol) for pts in paths]))


def twist_holonomy(G: FuchsianGroup, c, t: float, basepoint=None, tol=TOL_DEG) -> FuchsianGroup:
    """Left earthquake of amount t along the simple closed geodesic of ρ(c)."""
    c = Word.parse(c) if isinstance(c, str) else Word(c)
    if t == 0:
        return G
    try:
        curve = from_closed_geodesic(G, c, 1.0, 2)
    except NonSimpleError:
        raise
    index = LiftIndex(G, curve)
    b = resolve_basepoint(G, index, basepoint, tol)
    paths = generator_paths(G, index, b, tol)
    gens = []
    for i, pts in enumerate(paths):
        M = np.eye(3)
        for cr in polyline_crossings(index, pts, tol):
            M = M @ translate_along(Geodesic(normalize_spacelike(cr.normal)), t)
        gens.append(M @ G.generators[i])
    return FuchsianGroup(np.stack(gens), G.relator, None)
