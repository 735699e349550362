import numpy as np
import pytest

from teichform.cohomology import Cocycle, class_distance, coboundary, phi, random_cocycle
from teichform.geograph import from_closed_geodesic, from_multicurve
from teichform.mess import (
    AffineRep,
    HullError,
    affine_orbit,
    future_hull,
    gauss_graph,
    round_trip_distance,
    tangent_to_graph,
)
from teichform.mink import ORIGIN, mink_dot, mink_norm2


def test_zero_cocycle_orbit_is_linear(G):
    pts, words = affine_orbit(AffineRep(G, Cocycle.zero()), ORIGIN, 5.0)
    assert len(pts) == len(G.group_ball(5.0)) == 49
    np.testing.assert_allclose(mink_norm2(pts), -1.0, atol=1e-9)


def test_orbit_equivariance(G):
    tau = random_cocycle(G, 3)
    rep = AffineRep(G, tau)
    assert rep.closure_defect() < 1e-8
    seed = np.array([0.0, 0.0, 3.0])
    w = (1,)
    moved_seed = rep.apply(w, seed)
    small, _ = affine_orbit(rep, moved_seed, 3.0)
    big, _ = affine_orbit(rep, seed, 3.0 + 2 * G.domain.inradius + 1e-6)
    for p in small:
        assert np.min(np.abs(big - p).max(axis=1)) < 1e-8 * max(1.0, np.abs(p).max())


def test_single_lower_face():
    pts = np.array([[1.0, 0, 0], [-0.5, 0.8, 0], [-0.5, -0.8, 0], [0, 0, 5]])
    hull = future_hull(pts)
    assert len(hull.faces) == 1
    f = hull.faces[0]
    np.testing.assert_allclose(f.normal, [0, 0, 1], atol=1e-12)
    assert sorted(f.vertices) == [0, 1, 2]


def test_interior_point_does_not_change_hull():
    rng = np.random.default_rng(0)
    xy = rng.normal(size=(30, 2))
    pts = np.column_stack([xy, 3 + 0.2 * np.sum(xy ** 2, axis=1)])
    base = future_hull(pts)
    more = future_hull(np.vstack([pts, [0.0, 0.0, 50.0]]))
    key = lambda h: sorted(tuple(sorted(f.vertices)) for f in h.faces)
    assert key(base) == key(more)


def test_degenerate_input():
    with pytest.raises(HullError):
        future_hull(np.zeros((3, 3)))
    with pytest.raises(HullError):
        future_hull(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0.0]]))


def test_hull_faces_spacelike_and_convex(G):
    pts, _ = affine_orbit(AffineRep(G, random_cocycle(G, 1)), np.array([0, 0, 3.0]), 6.0)
    hull = future_hull(pts)
    for f in hull.faces:
        assert mink_norm2(f.normal) == pytest.approx(-1, abs=1e-10) and f.normal[2] > 0
        # every orbit point is on or above the support plane
        assert np.all(mink_dot(pts, f.normal[None, :]) <= f.offset + 1e-9 * np.abs(pts).max())


def test_zero_cocycle_gives_a_coboundary_class(G):
    g = tangent_to_graph(G, Cocycle.zero(), 8.0)
    assert len(g.vertices) == 1 and len(g.edges) == 4
    assert class_distance(G, phi(G, g), Cocycle.zero()) < 1e-8


def test_coboundary_round_trip(G):
    cb = coboundary(G, np.array([0.2, -0.4, 0.1]))
    g = tangent_to_graph(G, cb, 8.0)
    assert class_distance(G, phi(G, g), Cocycle.zero()) < 1e-3


@pytest.mark.parametrize("make", [
    lambda G: from_closed_geodesic(G, "a1"),
    lambda G: from_multicurve(G, [("a1", 1.0), ("b1", 0.5)]),
])
def test_graph_round_trip(G, make):
    tau = phi(G, make(G))
    assert round_trip_distance(G, tau, 8.0) < 1e-3


@pytest.mark.parametrize("seed", [0, 5])
def test_random_round_trip_and_weights(G, seed):
    tau = random_cocycle(G, seed)
    g, report, _ = tangent_to_graph(G, tau, 8.0, details=True)
    assert all(e.weight >= 0 for e in g.edges)
    assert report["max_defect"] < 1e-6
    assert class_distance(G, phi(G, g), tau) < 1e-3


def test_hull_invariance(G):
    tau = random_cocycle(G, 2)
    rep = AffineRep(G, tau)
    pts, _ = affine_orbit(rep, np.array([0, 0, 3.0]), 8.0)
    g1, _ = gauss_graph(G, future_hull(pts))
    # one generator keeps the octagon's cells well inside the moved ball
    w = (2,)
    moved = np.array([G.evaluate_word(w) @ p for p in pts]) + rep.translation(w)
    g2, _ = gauss_graph(G, future_hull(moved))
    assert class_distance(G, phi(G, g1), phi(G, g2)) < 1e-6


def test_obj_dump(G):
    _, _, hull = tangent_to_graph(G, random_cocycle(G, 0), 6.0, details=True)
    text = hull.to_obj()
    lines = text.splitlines()
    assert sum(l.startswith("v ") for l in lines) == len(hull.points)
    assert sum(l.startswith("f ") for l in lines) == len(hull.faces)
