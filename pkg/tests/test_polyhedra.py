import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

import catalog
from tropbns.laurent import LaurentPoly
from tropbns.polyhedra import (Cone, Fan, alexander_ball, cone_membership, convex_hull, face_fan,
                               fans_disjoint_interiors, linear_image, newton_polytope, normal_fan, polar_dual,
                               skeleton)

F = Fraction


def rays_of(fan):
    return {tuple(int(x) for x in r) for r in fan.used_rays()}


# ---------------------------------------------------------------- hulls


def test_triangle():
    P = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert len(P.facets) == 3 and P.dim == 2
    assert set(P.vertices) == {(0, 0), (1, 0), (0, 1)}


def test_quadrilateral_with_interior_point():
    P = newton_polytope(LaurentPoly.parse(catalog.DIAGONALS_DELTA, 2))
    assert set(P.vertices) == {(1, 0), (2, 1), (1, 2), (0, 1)}
    assert P.interior_contains((1, 1))


def test_point_and_segment():
    P = convex_hull([(3, 4)])
    assert P.dim == 0 and P.facets == ()
    S = convex_hull([(0, 0), (0, 1), (0, 2)])
    assert S.dim == 1 and set(S.vertices) == {(0, 0), (0, 2)}


def test_empty_hull():
    with pytest.raises(ValueError):
        convex_hull([])


point_sets = st.integers(2, 3).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(-4, 4)] * n), min_size=n + 1, max_size=9, unique=True))


@settings(max_examples=80, deadline=None)
@given(point_sets)
def test_hull_matches_scipy(pts):
    P = convex_hull(pts)
    n = len(pts[0])
    if P.dim < n:
        return
    ref = ConvexHull(np.array(pts, dtype=float))
    assert {pts[i] for i in ref.vertices} == set(P.vertices)


@settings(max_examples=80, deadline=None)
@given(point_sets)
def test_hull_is_idempotent_and_consistent(pts):
    P = convex_hull(pts)
    assert convex_hull(P.vertices) == P
    for p in pts:
        assert P.contains(p)
    if P.dim == P.ambient:
        for v in P.vertices:
            assert sum(1 for a, b in P.facets if sum(x * y for x, y in zip(a, v)) == b) >= P.ambient


# ---------------------------------------------------------------- fans


def test_triangle_normal_fan():
    N = normal_fan(convex_hull([(0, 0), (1, 0), (0, 1)]))
    assert len(N.cones) == 3
    assert rays_of(N) == {(1, 0), (0, 1), (-1, -1)}
    assert rays_of(skeleton(N)) == {(1, 0), (0, 1), (-1, -1)}


def test_segment_normal_fan():
    N = normal_fan(convex_hull([(0, 0), (0, 1)]))
    assert len(N.cones) == 2
    S = skeleton(N)
    assert S.contains((5, 0)) and S.contains((-3, 0)) and not S.contains((1, 1))


def test_point_normal_fan_and_skeleton():
    N = normal_fan(convex_hull([(1, 1)]))
    assert N.is_full_space()
    S = skeleton(N)
    assert S.contains((0, 0)) and not S.contains((1, 0))


def test_diagonal_skeleton():
    N = normal_fan(newton_polytope(LaurentPoly.parse(catalog.DIAGONALS_DELTA, 2)))
    assert rays_of(skeleton(N)) == {(1, 1), (-1, -1), (1, -1), (-1, 1)}


def test_cone_membership():
    S = skeleton(normal_fan(convex_hull([(0, 0), (1, 0), (0, 1)])))
    c = cone_membership(S, (-1, -1))
    assert c is not None and c.rays == ((-1, -1),)
    assert cone_membership(S, (0, 0)).dim == 0
    assert cone_membership(S, (2, 1)) is None


@settings(max_examples=40, deadline=None)
@given(point_sets, st.lists(st.tuples(st.integers(-7, 7), st.integers(-7, 7), st.integers(-7, 7)), max_size=10))
def test_normal_fan_is_complete(pts, ws):
    P = convex_hull(pts)
    N = normal_fan(P)
    n = P.ambient
    assert fans_disjoint_interiors(N)
    for w in ws:
        w = w[:n]
        c = cone_membership(N, w)
        assert c is not None
        # w is minimized over P exactly at the vertices of the located cone's face
        vals = [sum(a * b for a, b in zip(w, v)) for v in P.vertices]
        assert min(vals) == P.support_min(w)


# ---------------------------------------------------------------- duality and the Alexander ball


def test_alexander_ball_one_variable():
    B = alexander_ball(LaurentPoly.parse("t1 + t1^-1 - 2", 1))
    assert set(B.vertices) == {(F(-1, 2),), (F(1, 2),)}


def test_alexander_ball_diagonals():
    B = alexander_ball(LaurentPoly.parse(catalog.DIAGONALS_DELTA, 2))
    h = F(1, 2)
    assert set(B.vertices) == {(h, h), (-h, h), (h, -h), (-h, -h)}
    assert len(B.facets) == 4
    assert face_fan(B).same_as(normal_fan(newton_polytope(LaurentPoly.parse(catalog.DIAGONALS_DELTA, 2))))


def test_alexander_ball_degenerate_segment():
    B = alexander_ball(LaurentPoly.parse("t1*t2*t3 - 1", 3))
    assert B.degenerate
    t = F(1, 3)
    assert set(B.vertices) == {(t, t, t), (-t, -t, -t)}
    # the cone over each open facet is a half-space bounded by the plane x1 + x2 + x3 = 0
    assert B.contains((1, -1, F(1))) and not B.contains((1, 1, 0))


def test_alexander_ball_rejects_asymmetric():
    with pytest.raises(ValueError):
        alexander_ball(LaurentPoly.parse("t1 - 2", 1))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(-4, 4)), min_size=1, max_size=4))
def test_polar_duality_is_an_involution(half):
    pts = [p for q in half for p in (q, (-q[0], -q[1]))] + [(0, 2), (0, -2)]
    P = convex_hull(pts)
    D = polar_dual(P)
    assert polar_dual(D) == P
    assert normal_fan(P).same_as(face_fan(D))


# ---------------------------------------------------------------- cones and linear images


def test_cone_from_redundant_generators():
    C = Cone([(1, 0), (0, 1), (1, 1)], ambient=2)
    assert set(C.rays) == {(1, 0), (0, 1)}
    H = Cone([(1, 0), (-1, 0), (0, 1)], ambient=2)
    assert H.dim == 2 and len(H.lineality) == 1


def test_linear_image_into_six_space():
    A = [[1, 0], [0, 1], [0, 0], [0, 0], [0, 0], [0, 0]]
    full = Fan(2, [], [[]], [(1, 0), (0, 1)])
    img = linear_image(full, A)
    assert img.contains((3, -2, 0, 0, 0, 0)) and not img.contains((0, 0, 1, 0, 0, 0))


def test_linear_image_primitivizes():
    ray = Fan(2, [(1, 0)], [[0]])
    img = linear_image(ray, [[2, 0], [0, 3]])
    assert rays_of(img) == {(1, 0)}
    assert linear_image(ray, [[1, 0], [0, 1]]).same_as(ray)


def test_linear_image_rejects_non_injective():
    plane = Fan(2, [], [[]], [(1, 0), (0, 1)])
    with pytest.raises(ValueError):
        linear_image(plane, [[1, 1], [1, 1]])


def test_fan_json_round_trip():
    N = normal_fan(convex_hull([(0, 0), (2, 0), (0, 1), (1, 3)]))
    assert Fan.from_json(N.to_json()).same_as(N)


def test_random_points_locate_in_triangle_fan():
    N = normal_fan(convex_hull([(0, 0), (1, 0), (0, 1)]))
    rng = random.Random(4)
    for _ in range(200):
        w = (F(rng.randint(-20, 20), rng.randint(1, 5)), F(rng.randint(-20, 20), rng.randint(1, 5)))
        assert cone_membership(N, w) is not None
