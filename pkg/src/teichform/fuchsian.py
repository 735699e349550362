"""The genus-2 surface group acting on the hyperboloid.

``genus2_octagon`` builds the regular octagon with all vertex angles π/4,
whose side pairings generate a Fuchsian group
realising the relator ``a1 b1 A1 B1 a2 b2 A2 B2``.  The octagon is the
Dirichlet domain of its centre, which is what makes ``reduce_to_domain``
terminate and lets ``group_ball`` stay inside the ball it enumerates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL_MAT
from .mink import (
    ORIGIN,
    Geodesic,
    GeometryError,
    distance,
    inverse_isometry,
    is_isometry,
    mink_dot,
    mink_norm2,
    normalize_point,
    normalize_spacelike,
    tangent_toward,
    translate_along,
)
from .words import LETTERS, RELATOR, Word, reduced_words


class GroupError(ValueError):
    pass


def _rot(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _shift(s):
    # translation along the x1-axis through the origin
    return np.array([[np.cosh(s), 0.0, np.sinh(s)], [0.0, 1.0, 0.0], [np.sinh(s), 0.0, np.cosh(s)]])


def _octagon_vertices(circumradius):
    k = np.arange(8)
    th = k * np.pi / 4
    sh, ch = np.sinh(circumradius), np.cosh(circumradius)
    return np.stack([sh * np.cos(th), sh * np.sin(th), np.full(8, ch)], axis=1)


def _vertex_angle(circumradius):
    v = _octagon_vertices(circumradius)
    u1 = tangent_toward(v[0], v[1])
    u7 = tangent_toward(v[0], v[7])
    return float(np.arccos(np.clip(mink_dot(u1, u7), -1.0, 1.0)))


def solve_circumradius(angle=np.pi / 4, tol=1e-14):
    """Bisection for the circumradius of the regular octagon with given vertex angle."""
    lo, hi = 1e-3, 10.0
    # vertex angle decreases from 3π/4 towards 0 as the octagon grows
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _vertex_angle(mid) > angle:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class OctagonDomain:
    center: np.ndarray
    vertices: np.ndarray        # (8, 3), vertex k at angle kπ/4
    side_normals: np.ndarray    # (8, 3), outward unit normals; side k joins vertex k and k+1
    side_letters: tuple         # letter of the element carrying D across side k
    side_targets: tuple         # side paired with side k
    circumradius: float
    inradius: float

    def vertex_angles(self):
        out = []
        for k in range(8):
            u = tangent_toward(self.vertices[k], self.vertices[(k + 1) % 8])
            w = tangent_toward(self.vertices[k], self.vertices[(k - 1) % 8])
            out.append(float(np.arccos(np.clip(mink_dot(u, w), -1.0, 1.0))))
        return np.array(out)

    def area(self):
        return (8 - 2) * np.pi - float(np.sum(self.vertex_angles()))

    @property
    def diameter(self):
        return 2.0 * self.circumradius

    def contains(self, p, tol=1e-12):
        return bool(np.all(self.side_normals @ (p * np.array([1.0, 1.0, -1.0])) <= tol * max(1.0, p[2])))

    def boundary(self, n=32):
        pts = []
        for k in range(8):
            a, b = self.vertices[k], self.vertices[(k + 1) % 8]
            u = tangent_toward(a, b)
            s = np.linspace(0.0, float(distance(a, b)), n)
            pts.append(np.cosh(s)[:, None] * a + np.sinh(s)[:, None] * u)
        return np.concatenate(pts)


@dataclass(frozen=True)
class GroupElement:
    word: Word
    matrix: np.ndarray


@dataclass(frozen=True)
class _Ball:
    radius: float
    words: list
    mats: np.ndarray
    centers: np.ndarray
    dists: np.ndarray


@dataclass(frozen=True, eq=False)
class FuchsianGroup:
    """Four generator isometries with the genus-2 relator and (optionally) a domain.

    Operations that need point location (``reduce_to_domain``, ``group_ball``,
    ``locate``) require the octagon domain; a group obtained by deformation
    carries only its generators.
    """

    generators: np.ndarray
    relator: Word = RELATOR
    domain: OctagonDomain | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = np.asarray(self.generators, dtype=float)
        if gens.shape != (4, 3, 3):
            raise GroupError("expected four 3x3 generator matrices")
        object.__setattr__(self, "generators", gens)
        mats = {}
        for i in range(4):
            mats[i + 1] = gens[i]
            mats[-(i + 1)] = inverse_isometry(gens[i])
        self._cache["letters"] = mats

    @property
    def genus(self) -> int:
        return 2

    def letter_matrix(self, letter: int):
        return self._cache["letters"][letter]

    def evaluate_word(self, word) -> np.ndarray:
        m = np.eye(3)
        for l in word:
            m = m @ self._cache["letters"][l]
        return m

    def ad(self, word, v):
        return self.evaluate_word(word) @ v

    def relator_error(self) -> float:
        return float(np.max(np.abs(self.evaluate_word(self.relator) - np.eye(3))))

    def _require_domain(self) -> OctagonDomain:
        if self.domain is None:
            raise GroupError("this operation needs the fundamental octagon")
        return self.domain

    # -- point location ---------------------------------------------------

    def reduce_to_domain(self, p, max_steps=10_000):
        """Return (p0, γ) with p0 in the closed octagon and ρ(γ)·p0 = p."""
        dom = self._require_domain()
        q = normalize_point(np.asarray(p, dtype=float))
        letters = []
        sign = np.array([1.0, 1.0, -1.0])
        for _ in range(max_steps):
            vals = dom.side_normals @ (q * sign)
            k = int(np.argmax(vals))
            if vals[k] <= 1e-12 * max(1.0, q[2]):
                return q, Word(letters)
            l = dom.side_letters[k]
            q = normalize_point(self.letter_matrix(-l) @ q)
            letters.append(l)
        raise GroupError("reduce_to_domain hit its step cap; group data is inconsistent")

    def near_elements(self):
        """Elements whose tile meets the closed octagon (and a little more)."""
        if "near" not in self._cache:
            dom = self._require_domain()
            b = self._ball(dom.diameter + 0.1)
            self._cache["near"] = (b.words, b.mats)
        return self._cache["near"]

    def locate(self, target, base, tol=1e-7) -> Word:
        """A word γ with ρ(γ)·base = target (base in the closed octagon)."""
        p0, g0 = self.reduce_to_domain(target)
        words, mats = self.near_elements()
        imgs = mats @ base
        d = distance(imgs, p0[None, :])
        k = int(np.argmin(d))
        if d[k] > tol:
            raise GroupError("points are not in the same orbit")
        return g0 * words[k]

    def same_surface_point(self, p, q, tol=1e-7) -> bool:
        p0, _ = self.reduce_to_domain(p)
        q0, _ = self.reduce_to_domain(q)
        _, mats = self.near_elements()
        return bool(np.min(distance(mats @ q0, p0[None, :])) < tol)

    # -- enumeration ------------------------------------------------------

    def _ball(self, radius) -> _Ball:
        cached = self._cache.get("ball")
        if cached is None or cached.radius < radius:
            cached = self._enumerate_ball(max(radius, 1.0))
            self._cache["ball"] = cached
        if cached.radius == radius:
            return cached
        keep = cached.dists <= radius + 1e-9
        return _Ball(
            radius,
            [w for w, k in zip(cached.words, keep) if k],
            cached.mats[keep],
            cached.centers[keep],
            cached.dists[keep],
        )

    def _enumerate_ball(self, radius) -> _Ball:
        dom = self._require_domain()
        # Voronoi-cell argument: every tile met by the segment from the centre to a
        # site within R has its own site within R, so the search never leaves the ball.
        c = dom.center
        letter_mats = np.stack([self.letter_matrix(l) for l in LETTERS])
        words = [Word()]
        mats = [np.eye(3)]
        index = {}

        def keys(pt):
            base = np.round(pt).astype(np.int64)
            alts = []
            for i in range(3):
                f = pt[i] - np.floor(pt[i])
                alts.append({int(base[i]), int(np.floor(pt[i])) + (1 if f > 0.5 else 0)} if abs(f - 0.5) < 1e-3
                            else {int(base[i])})
            return [(a, b, d) for a in alts[0] for b in alts[1] for d in alts[2]]

        def lookup(pt):
            for key in keys(pt):
                for j in index.get(key, ()):
                    if np.max(np.abs(mats[j] @ c - pt)) < 1e-6 * max(1.0, abs(pt[2])):
                        return j
            return None

        def insert(pt, j):
            key = tuple(int(v) for v in np.round(pt))
            index.setdefault(key, []).append(j)

        insert(c, 0)
        frontier = [0]
        limit = np.cosh(radius) * (1 + 1e-12) + 1e-12
        while frontier:
            F = np.stack([mats[j] for j in frontier])
            cand = np.einsum("fij,ljk->flik", F, letter_mats)
            centers = cand @ c
            ok = centers[..., 2] <= limit
            nxt = []
            for fi, j in enumerate(frontier):
                for li, l in enumerate(LETTERS):
                    if not ok[fi, li]:
                        continue
                    w = words[j]
                    if w and w[-1] == -l:
                        continue
                    pt = centers[fi, li]
                    if lookup(pt) is not None:
                        continue
                    words.append(Word(tuple(w) + (l,)))
                    mats.append(cand[fi, li])
                    insert(pt, len(mats) - 1)
                    nxt.append(len(mats) - 1)
            frontier = nxt
        order = sorted(range(len(words)), key=lambda j: words[j].shortlex_key())
        words = [words[j] for j in order]
        M = np.stack([mats[j] for j in order])
        centers = M @ c
        return _Ball(radius, words, M, centers, distance(centers, c[None, :]))

    def group_ball(self, radius) -> list[GroupElement]:
        if radius <= 0:
            raise ValueError("radius must be positive")
        b = self._ball(radius)
        return [GroupElement(w, m) for w, m in zip(b.words, b.mats)]

    def ball_arrays(self, radius):
        b = self._ball(radius)
        return b.words, b.mats, b.dists

    def validate(self, check_discrete=True):
        """Raise ``GroupError`` if any group invariant fails."""
        for i, g in enumerate(self.generators):
            if not is_isometry(g, 1e-10):
                raise GroupError(f"generator {i} is not in SO0(2,1)")
        if self.relator_error() > TOL_MAT:
            raise GroupError(f"relator evaluates to {self.relator_error():.3g} away from identity")
        if self.domain is not None:
            dom = self.domain
            if abs(float(np.sum(dom.vertex_angles())) - 2 * np.pi) > 1e-8:
                raise GroupError("octagon angles do not sum to 2π")
            if abs(dom.area() - 4 * np.pi) > 1e-8:
                raise GroupError("octagon area is not 4π")
        if check_discrete:
            bad = near_identity_words(self, 4, 1e-3)
            if bad:
                raise GroupError(f"nontrivial word {bad[0]} is within 1e-3 of the identity")


def near_identity_words(G: FuchsianGroup, max_len=4, tol=1e-3):
    """Nontrivial reduced words of length <= max_len whose matrix is within tol of I."""
    found = []
    for w in reduced_words(max_len):
        if not w:
            continue
        if np.max(np.abs(G.evaluate_word(w) - np.eye(3))) < tol:
            found.append(w)
    return found


# letter of the element carrying the octagon across each side
_SIDE_LETTERS = (1, -2, -1, 2, 3, -4, -3, 4)
_SIDE_TARGETS = (2, 3, 0, 1, 6, 7, 4, 5)


def genus2_octagon() -> FuchsianGroup:
    """Regular octagon with vertex angles π/4 and its side-pairing group."""
    Rc = solve_circumradius()
    verts = _octagon_vertices(Rc)
    mid0 = normalize_point(verts[0] + verts[1])
    r = float(distance(ORIGIN, mid0))

    def side_dir(k):
        return (k + 0.5) * np.pi / 4

    def pairing(k, j):
        # carries side j onto side k and the octagon across side k
        return _rot(side_dir(k) + np.pi) @ _shift(-2 * r) @ _rot(-side_dir(j))

    gens = np.stack([pairing(0, 2), pairing(3, 1), pairing(4, 6), pairing(7, 5)])
    G0 = FuchsianGroup(gens)
    normals = []
    for k in range(8):
        Sk = G0.letter_matrix(_SIDE_LETTERS[k])
        normals.append(normalize_spacelike(Sk @ ORIGIN - ORIGIN))
    dom = OctagonDomain(
        center=ORIGIN.copy(),
        vertices=verts,
        side_normals=np.stack(normals),
        side_letters=_SIDE_LETTERS,
        side_targets=_SIDE_TARGETS,
        circumradius=Rc,
        inradius=r,
    )
    return FuchsianGroup(gens, RELATOR, dom)


def side_pairings(G: FuchsianGroup) -> dict:
    """side index -> (word of the pairing element, paired side)."""
    dom = G._require_domain()
    return {k: (Word((dom.side_letters[k],)), dom.side_targets[k]) for k in range(8)}


def axis_of(g, tol=1e-9):
    """Axis (oriented so g translates positively) and translation length of a hyperbolic g."""
    g = np.asarray(g, dtype=float)
    tr = float(np.trace(g))
    if tr <= 3.0 + tol:
        raise GeometryError("isometry is not hyperbolic")
    length = float(np.arccosh((tr - 1.0) / 2.0))
    _, _, vh = np.linalg.svd(g - np.eye(3))
    x = vh[-1]
    if mink_norm2(x) <= 0:
        raise GeometryError("fixed vector of a hyperbolic element must be spacelike")
    x = normalize_spacelike(x)
    geod = Geodesic(x)
    if np.max(np.abs(translate_along(geod, length) - g)) > np.max(np.abs(translate_along(geod.reversed(), length) - g)):
        geod = geod.reversed()
    return geod, length
