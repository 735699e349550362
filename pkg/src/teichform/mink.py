"""Minkowski space R^{2,1}, the hyperboloid model and so(2,1) in vector form.

Vectors are plain ``numpy`` arrays of shape ``(3,)`` (or stacks ``(..., 3)``).
A Lie algebra element is stored as the vector ``v`` standing for the matrix
``lambda_matrix(v)``; the adjoint action of an isometry ``g`` is then simply
``g @ v``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL_DEG, TOL_MAT, TOL_POINT

J = np.diag([1.0, 1.0, -1.0])
_SIGN = np.array([1.0, 1.0, -1.0])
ORIGIN = np.array([0.0, 0.0, 1.0])


class GeometryError(ValueError):
    pass


def mink_dot(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.sum(x * y * _SIGN, axis=-1)


def mink_norm2(x):
    return mink_dot(x, x)


def classify(x, tol=TOL_POINT) -> str:
    q = float(mink_norm2(x))
    if q < -tol:
        return "timelike"
    if q > tol:
        return "spacelike"
    return "lightlike"


def _orth(x, y):
    # the Minkowski-orthogonal complement direction of span(x, y)
    return np.cross(x, y) * _SIGN


def lambda_matrix(v):
    x1, x2, x3 = np.asarray(v, dtype=float)
    return np.array([[0.0, x3, -x2], [-x3, 0.0, x1], [-x2, x1, 0.0]])


def lambda_inv(m, tol=TOL_MAT):
    m = np.asarray(m, dtype=float)
    v = np.array([0.5 * (m[1, 2] + m[2, 1]), 0.5 * (m[2, 0] + m[0, 2]) * -1.0, 0.5 * (m[0, 1] - m[1, 0])])
    if np.max(np.abs(lambda_matrix(v) - m)) > tol:
        raise GeometryError("matrix is not in the image of lambda_matrix")
    return v


def killing(u, w):
    return 2.0 * mink_dot(u, w)


def killing_trace(u, w) -> float:
    """tr(Λ(u)Λ(w)), computed from matrices; independent check of ``killing``."""
    return float(np.trace(lambda_matrix(u) @ lambda_matrix(w)))


def is_isometry(m, tol=TOL_MAT) -> bool:
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        return False
    if np.max(np.abs(m.T @ J @ m - J)) > tol * max(1.0, np.max(np.abs(m)) ** 2):
        return False
    return abs(np.linalg.det(m) - 1.0) < tol * max(1.0, np.max(np.abs(m)) ** 3) and (m @ ORIGIN)[2] > 0


def check_isometry(m, tol=TOL_MAT):
    if not is_isometry(m, tol):
        raise GeometryError("matrix is not in SO0(2,1)")
    return np.asarray(m, dtype=float)


def inverse_isometry(m):
    # g^{-1} = J g^T J for Minkowski isometries
    return J @ np.asarray(m).T @ J


def is_hpoint(p, tol=TOL_POINT) -> bool:
    p = np.asarray(p, dtype=float)
    return abs(mink_norm2(p) + 1.0) < tol * max(1.0, p[2] ** 2) and p[2] > 0


def check_hpoint(p, tol=TOL_POINT):
    if not is_hpoint(p, tol):
        raise GeometryError(f"{p} is not on the upper hyperboloid")
    return np.asarray(p, dtype=float)


def normalize_point(p):
    """Project a timelike vector onto the upper sheet."""
    p = np.asarray(p, dtype=float)
    n2 = -mink_norm2(p)
    if np.any(n2 <= 0):
        raise GeometryError("vector is not timelike")
    q = p / np.sqrt(n2)[..., None] if p.ndim > 1 else p / np.sqrt(n2)
    return q * np.sign(q[..., 2:3]) if p.ndim > 1 else q * np.sign(q[2])


def normalize_spacelike(x):
    x = np.asarray(x, dtype=float)
    n2 = mink_norm2(x)
    if n2 <= 0:
        raise GeometryError("vector is not spacelike")
    return x / np.sqrt(n2)


def distance(a, b):
    """Hyperbolic distance.

    Near pairs use the chord (accurate for tiny distances); far pairs use
    arccosh of the inner product, which does not suffer the cancellation the
    chord does once the coordinates are large.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ip = -mink_dot(a, b)
    d = a - b
    chord2 = np.maximum(mink_norm2(d), 0.0)
    near = 2.0 * np.arcsinh(np.sqrt(chord2) / 2.0)
    far = np.arccosh(np.maximum(ip, 1.0))
    out = np.where(ip > 1.5, far, near)
    return float(out) if out.ndim == 0 else out


def point_from_disk(z):
    """Poincaré disk point (z1, z2) to the hyperboloid."""
    z = np.asarray(z, dtype=float)
    r2 = z[..., 0] ** 2 + z[..., 1] ** 2
    return np.stack([2 * z[..., 0], 2 * z[..., 1], 1 + r2], axis=-1) / (1 - r2)[..., None]


def to_disk(p):
    p = np.asarray(p, dtype=float)
    return p[..., :2] / (1.0 + p[..., 2:3])


def exp_map(p, v):
    """Exponential map at p applied to a tangent vector v."""
    n = np.sqrt(max(float(mink_norm2(v)), 0.0))
    if n == 0.0:
        return np.array(p, dtype=float)
    return np.cosh(n) * p + np.sinh(n) * (v / n)


def tangent_toward(a, b):
    """Unit tangent at a pointing to b."""
    w = b + mink_dot(a, b) * a
    n2 = mink_norm2(w)
    if n2 <= 0:
        raise GeometryError("coincident points have no tangent direction")
    return w / np.sqrt(n2)


def rotate_tangent(p, u, angle):
    """Rotate the tangent vector u at p counterclockwise by ``angle``."""
    # counterclockwise quarter turn at p
    w = _orth(p, u) * -1.0
    w = w / np.sqrt(mink_norm2(w)) * np.sqrt(max(mink_norm2(u), 0.0))
    if np.linalg.det(np.column_stack([p, u, w])) < 0:
        w = -w
    return np.cos(angle) * u + np.sin(angle) * w


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic ℍ² ∩ normal^⊥."""

    normal: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.normal, dtype=float)
        if abs(mink_norm2(x) - 1.0) > TOL_POINT * 10:
            raise GeometryError("geodesic normal must be unit spacelike")
        object.__setattr__(self, "normal", x)

    def reversed(self) -> "Geodesic":
        return Geodesic(-self.normal)

    def contains(self, p, tol=TOL_POINT) -> bool:
        return abs(float(mink_dot(self.normal, p))) < tol * max(1.0, abs(p[2]))

    def foot(self, p):
        """Closest point of the geodesic to p."""
        q = p - mink_dot(p, self.normal) * self.normal
        return normalize_point(q)

    def transform(self, g) -> "Geodesic":
        return Geodesic(normalize_spacelike(g @ self.normal))


def geodesic_between(a, b) -> Geodesic:
    """Geodesic through a and b, oriented from a to b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if distance(a, b) <= TOL_POINT:
        raise GeometryError("coincident points do not determine a geodesic")
    return Geodesic(translation_generator(a, tangent_toward(a, b)))


def translation_generator(p, u):
    """Unit spacelike x with Λ(x)p = u: the infinitesimal translation through p along u."""
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=float)
    if abs(mink_norm2(u) - 1.0) > 1e-8 or abs(mink_dot(u, p)) > 1e-8 * max(1.0, abs(p[2])):
        raise GeometryError("u is not a unit tangent vector at p")
    x = normalize_spacelike(_orth(p, u))
    if mink_dot(lambda_matrix(x) @ p, u) < 0:
        x = -x
    return x


def translate_along(geod: Geodesic, t: float):
    """exp(t Λ(x)) in closed form (Λ(x)^3 = Λ(x) for unit spacelike x)."""
    L = lambda_matrix(geod.normal)
    return np.eye(3) + np.sinh(t) * L + (np.cosh(t) - 1.0) * (L @ L)


def rotation_about(p, angle):
    """Elliptic isometry fixing p rotating counterclockwise by ``angle``."""
    p = check_hpoint(p, 1e-8)
    L = lambda_matrix(p)
    # Λ(p)^3 = -Λ(p) for unit timelike p
    R = np.eye(3) + np.sin(angle) * L + (1.0 - np.cos(angle)) * (L @ L)
    u = rotate_tangent(p, _any_tangent(p), 0.0)
    if np.linalg.det(np.column_stack([p, u, R @ u])) * np.sin(angle) < 0:
        R = np.eye(3) - np.sin(angle) * L + (1.0 - np.cos(angle)) * (L @ L)
    return R


def _any_tangent(p):
    e = np.array([1.0, 0.0, 0.0]) if abs(p[0]) < 0.9 * np.linalg.norm(p) else np.array([0.0, 1.0, 0.0])
    w = e + mink_dot(e, p) * p
    return w / np.sqrt(mink_norm2(w))


@dataclass(frozen=True)
class Segment:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = check_hpoint(self.a, 1e-8)
        b = check_hpoint(self.b, 1e-8)
        if distance(a, b) <= TOL_POINT:
            raise GeometryError("degenerate segment")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def geodesic(self) -> Geodesic:
        return geodesic_between(self.a, self.b)

    @property
    def length(self) -> float:
        return float(distance(self.a, self.b))

    def tangent_at(self, p):
        """Unit tangent at p (a point of the segment's line) pointing a -> b."""
        return lambda_matrix(self.geodesic.normal) @ p

    def sample(self, n=32):
        ua = tangent_toward(self.a, self.b)
        s = np.linspace(0.0, self.length, n)
        return np.cosh(s)[:, None] * self.a + np.sinh(s)[:, None] * ua


@dataclass(frozen=True)
class Intersection:
    point: np.ndarray
    tangent: np.ndarray
    other_tangent: np.ndarray
    degenerate: bool


def segment_intersection(s: Segment, t: Segment, tol=TOL_DEG):
    """Crossing of two segments, or ``None`` when they are disjoint.

    Near-endpoint contacts and near-tangent or collinear configurations are
    reported with ``degenerate=True`` rather than raised.
    """
    from ._kernels import COLLINEAR, CROSS, DEGENERATE, segment_crossings_numpy

    gs, gt = s.geodesic, t.geodesic
    ua_s, ub_s = tangent_toward(s.a, s.b), tangent_toward(s.b, s.a)
    ua_t, ub_t = tangent_toward(t.a, t.b), tangent_toward(t.b, t.a)
    status, P, _, _ = segment_crossings_numpy(
        s.a, gs.normal, ua_s, ub_s, s.length,
        t.a[None], t.b[None], gt.normal[None], ua_t[None], ub_t[None], tol,
    )
    st = int(status[0])
    if st == 0:
        return None
    if st == COLLINEAR:
        p = s.a if distance(s.a, t.a) < distance(s.b, t.a) else s.b
        return Intersection(p, lambda_matrix(gs.normal) @ p, lambda_matrix(gt.normal) @ p, True)
    p = P[0]
    return Intersection(
        p,
        lambda_matrix(gs.normal) @ p,
        lambda_matrix(gt.normal) @ p,
        st == DEGENERATE or st != CROSS,
    )


def orientation(p, u, w) -> float:
    """det[p u w]; positive when w is counterclockwise from u at p."""
    return float(np.linalg.det(np.column_stack([p, u, w])))


def signed_cos_angle(p, u, w, tol=TOL_DEG):
    """Cosine of the counterclockwise angle in (0, π) from line(u) to line(w).

    Returns ``(value, degenerate)``; ``degenerate`` is set when the lines are
    (numerically) parallel at p.
    """
    det = orientation(p, u, w)
    c = float(mink_dot(u, w))
    if abs(det) < tol:
        return c, True
    return (c if det > 0 else -c), False
