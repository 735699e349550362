import itertools

import numpy as np
import pytest

from teichform.cohomology import goldman_pairing, phi
from teichform.fuchsian import axis_of
from teichform.geograph import add, from_closed_geodesic, from_multicurve, scalar_mul
from teichform.mink import ORIGIN, distance, lambda_matrix, mink_dot, normalize_point, signed_cos_angle
from teichform.words import Word, reduced_words
from teichform.wolpert import perturb_graph, surface_intersections, wolpert_pairing


def brute_force_crossings(G, c1, c2, max_len=4):
    """Signed cosines at the crossings of two closed geodesics, from conjugate axes.

    One period [q, ρ(c1) q) of the first axis is tested against the axes of all
    conjugates η c2 η⁻¹ with |η| <= max_len, deduplicated by their normals.
    """
    geod1, len1 = axis_of(G.evaluate_word(Word.parse(c1)))
    x1 = geod1.normal
    geod2, _ = axis_of(G.evaluate_word(Word.parse(c2)))
    q = normalize_point(ORIGIN - mink_dot(ORIGIN, x1) * x1)
    u = lambda_matrix(x1) @ q
    seen = set()
    found = []
    for eta in reduced_words(max_len):
        x2 = G.evaluate_word(eta) @ geod2.normal
        key = tuple(np.round(x2, 6))
        if key in seen or abs(mink_dot(x1, x2)) >= 1:
            continue
        seen.add(key)
        p = normalize_point(np.cross(x1, x2) * np.array([1, 1, -1.0]))
        s = np.arcsinh(mink_dot(p, u))
        if -1e-9 <= s < len1 - 1e-9:
            found.append(signed_cos_angle(p, lambda_matrix(x1) @ p, lambda_matrix(x2) @ p)[0])
    return sorted(found)


@pytest.mark.parametrize("c1, c2", [("a1", "b1"), ("a1", "a1 b1"), ("b1", "a1 a2"), ("a1 B1", "a1 b1 b1")])
def test_crossings_match_brute_force(G, c1, c2):
    g1, g2 = from_closed_geodesic(G, c1), from_closed_geodesic(G, c2)
    recs = surface_intersections(G, g1, g2)
    want = brute_force_crossings(G, c1, c2)
    assert len(recs) == len(want) > 0
    np.testing.assert_allclose(sorted(r.cos_theta for r in recs), want, atol=1e-9)
    assert all(abs(r.cos_theta) < 1 for r in recs)
    assert wolpert_pairing(G, g1, g2) == pytest.approx(0.5 * sum(want), abs=1e-9)


def test_disjoint_curves(G, curves):
    assert surface_intersections(G, curves["a1"], curves["a2"]) == []
    assert wolpert_pairing(G, curves["a1"], curves["a2"]) == 0.0


def test_self_pairing_and_antisymmetry(G, curves, cross_graph):
    for g in (curves["a1"], cross_graph):
        assert wolpert_pairing(G, g, g) == pytest.approx(0, abs=1e-8)
    a, b = curves["a1"], from_closed_geodesic(G, "a1 b1 b1")
    assert wolpert_pairing(G, a, b) + wolpert_pairing(G, b, a) == pytest.approx(0, abs=1e-8)


def test_bilinearity(G, curves):
    a, b, c = curves["a1"], curves["b1"], from_closed_geodesic(G, "a1 a2")
    lam = 1.7
    assert wolpert_pairing(G, scalar_mul(lam, a), b) == pytest.approx(lam * wolpert_pairing(G, a, b), abs=1e-9)
    s = add(G, a, c)
    assert wolpert_pairing(G, s, b) == pytest.approx(wolpert_pairing(G, a, b) + wolpert_pairing(G, c, b), abs=1e-7)


def test_records_are_sorted_and_carry_weights(G):
    g1 = from_closed_geodesic(G, "a1", 2.0)
    g2 = from_multicurve(G, [("b1", 3.0), ("a1 b1", 0.5)])
    recs = surface_intersections(G, g1, g2)
    keys = [(r.edge, r.other_edge, r.s) for r in recs]
    assert keys == sorted(keys)
    assert {r.weight_product for r in recs} <= {6.0, 1.0}


@pytest.mark.parametrize("salt", [0, 1, 2])
def test_shared_edges_stable_under_isotopy(G, curves, salt):
    a = curves["a1"]
    g2 = add(G, a, from_closed_geodesic(G, "b1", 2.0))
    base = wolpert_pairing(G, a, g2, salt=0)
    assert wolpert_pairing(G, a, g2, salt=salt) == pytest.approx(base, abs=1e-6)
    assert wolpert_pairing(G, a, g2, delta=5e-5, salt=salt) == pytest.approx(base, abs=1e-6)
    # the shared a1 segment contributes nothing; only the b1 crossing does
    assert base == pytest.approx(2.0 * wolpert_pairing(G, a, curves["b1"]), abs=1e-6)


def test_perturbation_moves_vertices_by_delta(G, curves):
    g = curves["b2"]
    moved = perturb_graph(g, retry=3, delta=1e-4)
    for v, w in zip(g.vertices, moved.vertices):
        assert distance(v.point, w.point) == pytest.approx(1e-4, rel=1e-6)
    again = perturb_graph(g, retry=3, delta=1e-4)
    assert all(np.array_equal(v.point, w.point) for v, w in zip(moved.vertices, again.vertices))


def test_angle_sum_is_a_quarter_of_goldman(G, cross_graph):
    graphs = [from_closed_geodesic(G, w) for w in ("a1", "b1", "a1 b1", "a1 B1", "b1 b2", "a1 a1 b1")]
    graphs += [cross_graph, from_multicurve(G, [("a1 b2", 0.3), ("a2", 2.7)])]
    taus = [phi(G, g) for g in graphs]
    for (g, t), (h, u) in itertools.combinations(zip(graphs, taus), 2):
        assert wolpert_pairing(G, g, h) == pytest.approx(goldman_pairing(G, t, u) / 4, rel=1e-6, abs=1e-9)
