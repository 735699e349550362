import numpy as np
import pytest

from teichform.cohomology import (
    Cocycle,
    CocycleError,
    class_distance,
    coboundary,
    coboundary_matrix,
    cocycle_basis,
    cohomology_basis,
    constraint_matrix,
    defect_norm,
    extend,
    goldman_pairing,
    numeric_rank,
    pairing_matrix,
    path_value,
    phi,
    polyline_crossings,
    random_cocycle,
    relator_defect,
    twist_holonomy,
)
from teichform.geograph import from_closed_geodesic, from_multicurve, one_vertex_triangulation, realize_triangulation
from teichform.lifts import LiftIndex
from teichform.mink import ORIGIN, exp_map, lambda_matrix, point_from_disk, rotate_tangent, tangent_toward
from teichform.words import Word


@pytest.fixture(scope="module")
def taus(G):
    return [random_cocycle(G, s) for s in range(4)]


def test_extend_rules(G, taus):
    tau = taus[0]
    np.testing.assert_array_equal(extend(G, tau, Word()), np.zeros(3))
    w, v = Word.parse("a1 B2 b1"), Word.parse("A2 b2")
    np.testing.assert_array_equal(extend(G, tau, w * w.inverse()), np.zeros(3))
    for l in (1, 2, 3, 4):
        assert np.abs(extend(G, tau, (l, -l))).max() < 1e-10
    # unreduced, the cancellation is limited by the size of ρ(w)
    scale = np.abs(G.evaluate_word(w)).max() ** 2
    assert np.abs(extend(G, tau, tuple(w) + tuple(w.inverse()))).max() < 1e-14 * scale
    lhs = extend(G, tau, w * v)
    rhs = G.evaluate_word(w) @ extend(G, tau, v) + extend(G, tau, w)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10 * np.abs(G.evaluate_word(w)).max())


def test_coboundaries_are_cocycles(G):
    assert np.all(coboundary(G, np.zeros(3)).values == 0)
    rng = np.random.default_rng(2)
    for _ in range(5):
        assert defect_norm(G, coboundary(G, rng.normal(size=3))) < 1e-10


def test_random_cocycle_and_linearity(G, taus):
    for t in taus:
        assert defect_norm(G, t) < 1e-10
        assert np.linalg.norm(t.flat()) == pytest.approx(1.0)
    bad = Cocycle.from_flat(np.arange(12.0))
    np.testing.assert_allclose(relator_defect(G, 2 * bad + taus[0] * 3),
                               2 * relator_defect(G, bad) + 3 * relator_defect(G, taus[0]), atol=1e-9)
    np.testing.assert_array_equal(random_cocycle(G, 5).values, random_cocycle(G, 5).values)


def test_dimensions(G):
    assert numeric_rank(constraint_matrix(G)) == 3
    assert cocycle_basis(G).shape == (9, 12)
    assert numeric_rank(coboundary_matrix(G)) == 3
    assert cohomology_basis(G).shape == (6, 12)


def test_class_distance(G, taus):
    t = taus[1]
    assert class_distance(G, t, t) == 0
    assert class_distance(G, t, t + coboundary(G, np.array([0.4, -1.0, 2.0]))) < 1e-10
    assert class_distance(G, taus[0], taus[1]) == pytest.approx(class_distance(G, taus[1], taus[0]))


def test_goldman_exact_antisymmetric_and_class_only(G, taus):
    cb = coboundary(G, np.array([0.3, 0.1, -0.7]))
    for t in taus:
        assert abs(goldman_pairing(G, cb, t)) < 1e-8
        assert abs(goldman_pairing(G, t, cb)) < 1e-8
    a, b = taus[0], taus[1]
    assert goldman_pairing(G, a, b) + goldman_pairing(G, b, a) == pytest.approx(0, abs=1e-8)
    assert goldman_pairing(G, a + cb, b) == pytest.approx(goldman_pairing(G, a, b), abs=1e-8)
    assert goldman_pairing(G, a, 2 * b + taus[2]) == pytest.approx(
        2 * goldman_pairing(G, a, b) + goldman_pairing(G, a, taus[2]), abs=1e-9)


def test_goldman_nondegenerate(G):
    M = pairing_matrix(G, cohomology_basis(G))
    assert M.shape == (6, 6)
    np.testing.assert_allclose(M, -M.T, atol=1e-8)
    assert numeric_rank(M) == 6


def test_goldman_rejects_non_cocycles(G, taus):
    with pytest.raises(CocycleError):
        goldman_pairing(G, Cocycle.from_flat(np.ones(12)), taus[0])


def test_goldman_reference_orientation(G, curves):
    assert goldman_pairing(G, phi(G, curves["a1"]), phi(G, curves["b1"])) > 0


def test_phi_of_empty_graph_is_zero(G):
    from teichform.geograph import BalancedGraph

    assert np.all(phi(G, BalancedGraph()).values == 0)


def test_phi_is_a_cocycle(G, curves, cross_graph):
    for g in [*curves.values(), cross_graph]:
        assert defect_norm(G, phi(G, g)) < 1e-8
    r = realize_triangulation(G, one_vertex_triangulation(G), tol=1e-10)
    assert defect_norm(G, phi(G, r.graph)) < 1e-8


def test_phi_of_closed_geodesic_only_sees_crossing_generators(G, curves):
    # the a1 curve is met by the b1 path only; the other generators' paths miss it
    v = phi(G, curves["a1"]).values
    assert np.abs(v[[0, 2, 3]]).max() == 0
    assert np.linalg.norm(v[1]) > 0.1


# each basepoint lies across some edge lift from the default one, so τ itself changes
@pytest.mark.parametrize("z", [(0.8, 0.34), (-0.8, 0.3), (0.0, 0.8)])
def test_basepoint_change_is_a_coboundary(G, cross_graph, z):
    base = phi(G, cross_graph)
    moved = phi(G, cross_graph, point_from_disk(np.array(z)))
    assert np.abs(moved.values - base.values).max() > 1.0
    assert class_distance(G, base, moved) < 1e-8


def _arc(V, u, r, t0, t1, n=24):
    return [exp_map(V, r * rotate_tangent(V, u, t)) for t in np.linspace(t0, t1, n)]


def test_rerouting_across_a_vertex(G, cross_graph):
    index = LiftIndex(G, cross_graph)
    V = cross_graph.vertices[0].point
    u = tangent_toward(V, ORIGIN)
    # two arcs around the 4-valent vertex, one each way, with shared endpoints
    ccw = _arc(V, u, 0.05, 0.3, 0.3 + np.pi)
    cw = _arc(V, u, 0.05, 0.3, 0.3 - np.pi)
    a, b = path_value(index, ccw), path_value(index, cw)
    assert len(polyline_crossings(index, ccw)) + len(polyline_crossings(index, cw)) == 4
    np.testing.assert_allclose(a, b, atol=1e-8)
    assert np.linalg.norm(a) > 0.1


def test_double_crossing_cancels(G, curves):
    g = curves["a2"]
    index = LiftIndex(G, g)
    a, b = g.lift(G, g.edges[0])
    M = exp_map(a, 0.4 * tangent_toward(a, b))
    u = tangent_toward(M, b)
    w = rotate_tangent(M, u, np.pi / 2)
    p1, p2 = exp_map(M, 0.2 * w - 0.1 * u), exp_map(M, 0.2 * w + 0.1 * u)
    far = exp_map(M, -0.2 * w)
    direct, detour = [p1, p2], [p1, far, p2]
    assert len(polyline_crossings(index, detour)) == 2
    np.testing.assert_allclose(path_value(index, detour), path_value(index, direct), atol=1e-8)


def test_crossing_translation_points_left(G, curves):
    g = curves["a1"]
    index = LiftIndex(G, g)
    a, b = g.lift(G, g.edges[0])
    M = exp_map(a, 0.3 * tangent_toward(a, b))
    u = tangent_toward(M, b)
    w = rotate_tangent(M, u, np.pi / 2)
    # crossing from the right of the edge to its left: the translation is along u, to the walker's left
    path = [exp_map(M, -0.1 * w), exp_map(M, 0.1 * w)]
    cr, = polyline_crossings(index, path)
    d = w
    t = lambda_matrix(cr.normal) @ cr.point
    assert np.linalg.det(np.column_stack([cr.point, d, t])) > 0


def test_twist_identity_and_closure(G):
    assert twist_holonomy(G, "a1", 0.0) is G
    T = twist_holonomy(G, "a1", 0.1)
    assert T.relator_error() < 1e-8
    with pytest.raises(Exception):
        twist_holonomy(G, "a1 b2", 0.1)


@pytest.mark.parametrize("c", ["a1", "b2", "a1 b1"])
def test_twist_derivative_is_phi(G, c):
    tau = phi(G, from_closed_geodesic(G, c, 1.0, 2))
    h = 1e-4
    plus, minus = twist_holonomy(G, c, h), twist_holonomy(G, c, -h)
    for i in range(4):
        fd = (plus.generators[i] - minus.generators[i]) / (2 * h)
        np.testing.assert_allclose(fd, lambda_matrix(tau.values[i]) @ G.generators[i], atol=1e-6)
