import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_hpoint, random_isometry
from teichform.mink import (
    ORIGIN,
    Geodesic,
    GeometryError,
    Segment,
    classify,
    distance,
    exp_map,
    geodesic_between,
    inverse_isometry,
    is_isometry,
    killing,
    killing_trace,
    lambda_inv,
    lambda_matrix,
    mink_dot,
    point_from_disk,
    rotate_tangent,
    segment_intersection,
    signed_cos_angle,
    tangent_toward,
    to_disk,
    translate_along,
    translation_generator,
)

finite = st.floats(-10, 10, allow_nan=False)
vec = st.tuples(finite, finite, finite).map(np.array)


def test_mink_dot_examples():
    assert mink_dot(ORIGIN, ORIGIN) == -1
    assert mink_dot([1, 0, 0], [1, 0, 0]) == 1
    assert mink_dot([1, 2, 3], [4, 5, 6]) == -4


def test_classify():
    assert classify([0, 0, 1]) == "timelike"
    assert classify([1, 0, 0]) == "spacelike"
    assert classify([1, 0, 1]) == "lightlike"


def test_lambda_examples():
    np.testing.assert_array_equal(lambda_matrix([1, 0, 0]), [[0, 0, 0], [0, 0, 1], [0, 1, 0]])
    np.testing.assert_array_equal(lambda_matrix([0, 0, 0]), np.zeros((3, 3)))
    np.testing.assert_allclose(lambda_inv(lambda_matrix([2, -1, 5])), [2, -1, 5])


def test_lambda_inv_rejects_other_matrices():
    with pytest.raises(GeometryError):
        lambda_inv(np.eye(3))


def test_killing_examples():
    assert killing([1, 0, 0], [1, 0, 0]) == 2
    assert killing([0, 0, 0], [3, -1, 2]) == 0


@given(vec, vec)
def test_killing_matches_trace(u, w):
    assert abs(killing(u, w) - killing_trace(u, w)) <= 1e-12 * max(1.0, np.abs(u).max() * np.abs(w).max())


@settings(max_examples=50)
@given(vec, st.integers(0, 2**32 - 1))
def test_lambda_equivariance(v, seed):
    g = random_isometry(np.random.default_rng(seed))
    lhs = lambda_matrix(g @ v)
    rhs = g @ lambda_matrix(v) @ inverse_isometry(g)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10 * max(1.0, np.abs(g).max() ** 2 * np.abs(v).max()))


def test_translate_along_example():
    t = 0.7
    expected = [[1, 0, 0], [0, np.cosh(t), np.sinh(t)], [0, np.sinh(t), np.cosh(t)]]
    np.testing.assert_allclose(translate_along(Geodesic(np.array([1.0, 0, 0])), t), expected, atol=1e-14)
    np.testing.assert_allclose(translate_along(Geodesic(np.array([1.0, 0, 0])), 0.0), np.eye(3))


@settings(max_examples=50)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 2**32 - 1))
def test_translation_group_law(s, t, seed):
    rng = np.random.default_rng(seed)
    g = Geodesic(random_isometry(rng) @ np.array([1.0, 0, 0]))
    T = translate_along(g, s)
    np.testing.assert_allclose(T @ translate_along(g, t), translate_along(g, s + t), atol=1e-9 * np.cosh(abs(s) + abs(t)) ** 2)
    assert is_isometry(T)
    np.testing.assert_allclose(T @ g.normal, g.normal, atol=1e-10 * np.cosh(s) ** 2)


def test_translate_moves_points_on_axis_by_t():
    g = Geodesic(np.array([1.0, 0, 0]))
    assert distance(ORIGIN, translate_along(g, 1.3) @ ORIGIN) == pytest.approx(1.3, abs=1e-12)


def test_translation_generator_examples():
    np.testing.assert_allclose(translation_generator(ORIGIN, np.array([0.0, 1, 0])), [1, 0, 0])
    with pytest.raises(GeometryError):
        translation_generator(ORIGIN, np.array([0.0, 0, 1]))


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.floats(0, 2 * np.pi))
def test_translation_generator_equivariant_and_derivative(seed, angle):
    rng = np.random.default_rng(seed)
    p = random_hpoint(rng)
    u = rotate_tangent(p, tangent_toward(p, ORIGIN) if distance(p, ORIGIN) > 1e-3 else np.array([1.0, 0, 0]), angle)
    x = translation_generator(p, u)
    g = random_isometry(rng)
    np.testing.assert_allclose(translation_generator(g @ p, g @ u), g @ x, atol=1e-8)
    h = 1e-5
    fd = (translate_along(Geodesic(x), h) @ p - translate_along(Geodesic(x), -h) @ p) / (2 * h)
    np.testing.assert_allclose(fd, u, atol=1e-7)


def test_geodesic_between_examples():
    b = np.array([0.0, np.sinh(1), np.cosh(1)])
    np.testing.assert_allclose(geodesic_between(ORIGIN, b).normal, [1, 0, 0], atol=1e-14)
    np.testing.assert_allclose(geodesic_between(b, ORIGIN).normal, [-1, 0, 0], atol=1e-14)
    with pytest.raises(GeometryError):
        geodesic_between(ORIGIN, ORIGIN)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_geodesic_between_contains_endpoints(seed):
    rng = np.random.default_rng(seed)
    a, b = random_hpoint(rng), random_hpoint(rng)
    x = geodesic_between(a, b).normal
    assert abs(mink_dot(x, a)) < 1e-10 and abs(mink_dot(x, b)) < 1e-10
    assert mink_dot(x, x) == pytest.approx(1.0, abs=1e-12)


def test_disk_round_trip_and_distance():
    z = np.array([0.3, -0.4])
    np.testing.assert_allclose(to_disk(point_from_disk(z)), z)
    np.testing.assert_allclose(to_disk(ORIGIN), [0, 0])
    # distance from the centre of the disk is 2 artanh |z|
    assert distance(ORIGIN, point_from_disk(z)) == pytest.approx(2 * np.arctanh(0.5), rel=1e-13)


def test_distance_small_and_large():
    v = np.array([1e-9, 0.0, 0.0])
    assert distance(ORIGIN, exp_map(ORIGIN, v)) == pytest.approx(1e-9, rel=1e-6)
    assert distance(ORIGIN, exp_map(ORIGIN, np.array([0.0, 12.0, 0.0]))) == pytest.approx(12.0, rel=1e-12)


def _cross_segments(angle):
    u = np.array([1.0, 0, 0])
    w = rotate_tangent(ORIGIN, u, angle)
    s = Segment(exp_map(ORIGIN, -0.5 * u), exp_map(ORIGIN, 0.5 * u))
    t = Segment(exp_map(ORIGIN, -0.5 * w), exp_map(ORIGIN, 0.5 * w))
    return s, t


def test_perpendicular_segments_meet_at_origin():
    s, t = _cross_segments(np.pi / 2)
    hit = segment_intersection(s, t)
    np.testing.assert_allclose(hit.point, ORIGIN, atol=1e-14)
    assert not hit.degenerate
    assert signed_cos_angle(hit.point, hit.tangent, hit.other_tangent)[0] == pytest.approx(0, abs=1e-14)


def test_far_segments_do_not_meet():
    s, _ = _cross_segments(1.0)
    g = translate_along(Geodesic(np.array([0.0, 1, 0])), 5.0)
    t = Segment(g @ s.a, g @ s.b)
    assert segment_intersection(s, t) is None


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_random_crossing_point_is_on_both_lines(seed):
    rng = np.random.default_rng(seed)
    g = random_isometry(rng)
    s, t = _cross_segments(rng.uniform(0.2, np.pi - 0.2))
    s, t = Segment(g @ s.a, g @ s.b), Segment(g @ t.a, g @ t.b)
    hit = segment_intersection(s, t)
    other = segment_intersection(t, s)
    p = hit.point
    assert abs(mink_dot(s.geodesic.normal, p)) < 1e-9 and abs(mink_dot(t.geodesic.normal, p)) < 1e-9
    assert mink_dot(p, p) == pytest.approx(-1, abs=1e-9)
    np.testing.assert_allclose(other.point, p, atol=1e-9)


def test_endpoint_contact_is_degenerate():
    u = np.array([1.0, 0, 0])
    w = np.array([0.0, 1, 0])
    s = Segment(exp_map(ORIGIN, -0.5 * u), exp_map(ORIGIN, 0.5 * u))
    t = Segment(ORIGIN, exp_map(ORIGIN, 0.5 * w))
    assert segment_intersection(s, t).degenerate


def test_signed_cos_examples():
    u = np.array([1.0, 0, 0])
    c = np.cos(np.pi / 4)
    assert signed_cos_angle(ORIGIN, u, rotate_tangent(ORIGIN, u, np.pi / 2))[0] == pytest.approx(0, abs=1e-15)
    assert signed_cos_angle(ORIGIN, u, rotate_tangent(ORIGIN, u, np.pi / 4))[0] == pytest.approx(c)
    assert signed_cos_angle(ORIGIN, u, rotate_tangent(ORIGIN, u, -np.pi / 4))[0] == pytest.approx(-c)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, np.pi - 0.01))
def test_signed_cos_invariance_and_antisymmetry(seed, angle):
    rng = np.random.default_rng(seed)
    p = random_hpoint(rng)
    base = tangent_toward(p, ORIGIN) if distance(p, ORIGIN) > 1e-3 else np.array([1.0, 0, 0])
    u = rotate_tangent(p, base, rng.uniform(0, 6))
    w = rotate_tangent(p, u, angle)
    v, _ = signed_cos_angle(p, u, w)
    assert v == pytest.approx(np.cos(angle), abs=1e-9)
    assert signed_cos_angle(p, -u, -w)[0] == pytest.approx(v, abs=1e-12)
    assert signed_cos_angle(p, -u, w)[0] == pytest.approx(v, abs=1e-12)
    assert signed_cos_angle(p, w, u)[0] == pytest.approx(-v, abs=1e-12)
