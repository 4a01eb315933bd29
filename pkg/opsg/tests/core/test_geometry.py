"""Tests for the planar primitives."""
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from opsg.core.exceptions import DegenerateAngle, PointNotExterior
from opsg.core.geometry import (
    TAU,
    ccw_angle,
    convex_hull,
    diameter,
    edges_conflict,
    find_collinear_triple,
    in_cone,
    in_orthogonal_slab,
    interior_angle,
    orientation,
    point_in_convex_polygon,
    segment_avoids_hull_interior,
    segments_intersect,
    tangents_from_point,
)
from opsg.entities.schemas import Orientation, Point, PointSet
from opsg.tests.strategies import general_sets, points_xy


def P(x: float, y: float) -> Point:
    return Point(x=x, y=y)


# Predicates
@pytest.mark.parametrize(
    "a, b, c, expected",
    [
        ((0, 0), (1, 0), (0, 1), Orientation.COUNTERCLOCKWISE),
        ((0, 0), (0, 1), (1, 0), Orientation.CLOCKWISE),
        ((0, 0), (1, 1), (3, 3), Orientation.COLLINEAR),
        ((0.5, 0.5), (12, 12), (24, 24), Orientation.COLLINEAR),
        # float evaluation is inconclusive here, the rational fallback decides
        ((0.1, 0.1), (0.2, 0.2), (0.30000000000000004, 0.30000000000000004), Orientation.COLLINEAR),
    ],
)
def test_orientation(a, b, c, expected):
    assert orientation(P(*a), P(*b), P(*c)) == expected


@given(points_xy, points_xy, points_xy)
def test_orientation_antisymmetric(a, b, c):
    pa, pb, pc = P(*a), P(*b), P(*c)
    assert orientation(pa, pb, pc) == -orientation(pb, pa, pc)
    assert orientation(pa, pb, pc) == orientation(pb, pc, pa)


def test_segments_touching_at_endpoint_intersect():
    assert segments_intersect(P(0, 0), P(1, 0), P(1, 0), P(2, 1))
    assert not segments_intersect(P(0, 0), P(1, 0), P(0, 1), P(1, 1))


def test_edges_sharing_an_endpoint_do_not_conflict(unit_square: PointSet):
    pts = unit_square.points
    assert not edges_conflict(pts, (0, 1), (1, 2))
    assert edges_conflict(pts, (0, 2), (1, 3))
    assert edges_conflict(pts, (0, 1), (0, 1))


# Angles
def test_ccw_angle_quarter_turns():
    assert ccw_angle(P(1, 0), P(0, 0), P(0, 1)) == pytest.approx(math.pi / 2)
    assert ccw_angle(P(0, 1), P(0, 0), P(1, 0)) == pytest.approx(3 * math.pi / 2)


@given(points_xy, points_xy, points_xy)
def test_ccw_angles_complement(a, b, c):
    pa, pb, pc = P(*a), P(*b), P(*c)
    assume(orientation(pa, pb, pc) != Orientation.COLLINEAR)
    assume(interior_angle(pa, pb, pc) > 1e-6)
    assert ccw_angle(pa, pb, pc) + ccw_angle(pc, pb, pa) == pytest.approx(TAU)
    assert interior_angle(pa, pb, pc) <= math.pi


@pytest.mark.parametrize("fn", [ccw_angle, interior_angle])
def test_zero_length_ray_raises(fn):
    with pytest.raises(DegenerateAngle):
        fn(P(0, 0), P(0, 0), P(1, 1))


# Hull and diameter
def test_convex_hull_skips_interior(square_with_inner: PointSet):
    assert convex_hull(square_with_inner) == [0, 1, 2, 3]
    assert convex_hull(square_with_inner, [4, 1, 2]) == [4, 1, 2]


def test_diameter_breaks_ties_by_index(unit_square: PointSet):
    assert diameter(unit_square) == (0, 2)


def test_diameter_needs_two_points():
    with pytest.raises(ValueError):
        diameter([P(0, 0)])


@pytest.mark.parametrize(
    "coords, expected",
    [
        ([(0, 0), (1, 1), (2, 2), (0, 1)], (0, 1, 2)),
        ([(0, 0), (1, 0), (0, 1), (5, 0)], (0, 1, 3)),
        ([(0, 0), (1, 0), (0, 1), (1, 1)], None),
    ],
)
def test_find_collinear_triple(coords, expected):
    assert find_collinear_triple([P(*c) for c in coords]) == expected


# Slabs, cones, tangents
def test_in_orthogonal_slab():
    assert in_orthogonal_slab(P(0, 0), P(2, 0), P(1, 5))
    assert not in_orthogonal_slab(P(0, 0), P(2, 0), P(3, 1))
    assert not in_orthogonal_slab(P(0, 0), P(2, 0), P(-0.5, -1))


def test_in_cone_is_closed():
    apex = P(0, 0)
    assert in_cone(apex, P(1, 0), P(0, 1), P(1, 1))
    assert in_cone(apex, P(1, 0), P(0, 1), P(2, 0))
    assert not in_cone(apex, P(1, 0), P(0, 1), P(-1, -1))


def test_tangents_from_point_above_square(unit_square: PointSet):
    assert tangents_from_point(P(0, 5), unit_square) == (2, 3)


def test_tangents_from_interior_point_raises(unit_square: PointSet):
    with pytest.raises(PointNotExterior):
        tangents_from_point(P(0.5, 0.5), unit_square)


def test_point_in_convex_polygon(unit_square: PointSet):
    hull = convex_hull(unit_square)
    assert point_in_convex_polygon(P(0.5, 0.5), unit_square.points, hull)
    assert point_in_convex_polygon(P(1, 0.5), unit_square.points, hull)
    assert not point_in_convex_polygon(P(1.5, 0.5), unit_square.points, hull)


def test_segment_avoids_hull_interior(unit_square: PointSet):
    hull = convex_hull(unit_square)
    assert segment_avoids_hull_interior(P(2, 0), P(2, 1), unit_square.points, hull)
    assert segment_avoids_hull_interior(P(1, 0), P(1, 1), unit_square.points, hull)
    assert not segment_avoids_hull_interior(P(-1, 0.5), P(2, 0.5), unit_square.points, hull)


# Slab and diameter angle properties
@settings(max_examples=300)
@given(points_xy, points_xy, st.floats(min_value=0.01, max_value=0.99), st.floats(min_value=1e-3, max_value=1e3))
def test_slab_point_sees_segment_with_acute_base_angles(p, q, t, height):
    pp, pq = P(*p), P(*q)
    length = math.dist(p, q)
    assume(length > 1e-3)
    ux, uy = (q[0] - p[0]) / length, (q[1] - p[1]) / length
    r = P(p[0] + t * (q[0] - p[0]) - height * uy, p[1] + t * (q[1] - p[1]) + height * ux)
    assume(in_orthogonal_slab(pp, pq, r))
    assert interior_angle(pq, pp, r) <= math.pi / 2 + 1e-9
    assert interior_angle(r, pq, pp) <= math.pi / 2 + 1e-9


@settings(max_examples=50, deadline=None)
@given(general_sets(min_n=3, max_n=25))
def test_diameter_triangle_angles(s: PointSet):
    a, b = diameter(s)
    pa, pb = s[a], s[b]
    for r in range(s.n):
        if r in (a, b):
            continue
        pr = s[r]
        assert interior_angle(pa, pr, pb) >= math.pi / 3 - 1e-9
        assert min(interior_angle(pb, pa, pr), interior_angle(pa, pb, pr)) <= math.pi / 3 + 1e-9
