"""Tests for incident angles, openness and class predicates."""
import math

import pytest

from opsg.core.graph import (
    OPENNESS_BOUNDS,
    classify,
    incident_angles,
    is_connected,
    is_perfect_matching,
    is_plane,
    openness,
    path_openness,
    path_smaller_angles,
    pointed_vertices,
)
from opsg.entities.schemas import GraphClass, MaxDegree, PlaneGraph, PointSet


def test_incident_angles_sum_to_full_turn(square_with_inner: PointSet):
    g = PlaneGraph(base=square_with_inner, edges=frozenset({(4, 0), (4, 1), (4, 2), (4, 3)}))
    angles = incident_angles(g, 4)
    assert len(angles) == 4
    assert sum(angles) == pytest.approx(2 * math.pi)


def test_leaf_and_isolated_vertices_are_fully_open(unit_square: PointSet):
    g = PlaneGraph(base=unit_square, edges=frozenset({(0, 1)}))
    assert incident_angles(g, 0) == [2 * math.pi]
    assert incident_angles(g, 2) == [2 * math.pi]


def test_square_perimeter_path_openness(unit_square: PointSet):
    g = PlaneGraph.from_path(unit_square, [0, 1, 2, 3])
    report = openness(g)
    assert report.graph_openness == pytest.approx(3 * math.pi / 2)
    assert report.vertex(0) == pytest.approx(2 * math.pi)
    assert path_openness(unit_square.points, [0, 1, 2, 3]) == pytest.approx(3 * math.pi / 2)
    assert path_smaller_angles(unit_square.points, [0, 1, 2, 3]) == pytest.approx([math.pi / 2] * 2)


def test_pointed_vertices_exclude_fan_center(square_with_inner: PointSet):
    g = PlaneGraph(base=square_with_inner, edges=frozenset({(4, 0), (4, 1), (4, 2), (4, 3)}))
    assert 4 not in pointed_vertices(g)
    assert {0, 1, 2, 3} <= set(pointed_vertices(g))


def test_crossing_diagonals_are_not_plane(unit_square: PointSet):
    assert not is_plane(PlaneGraph(base=unit_square, edges=frozenset({(0, 2), (1, 3)})))
    assert is_plane(PlaneGraph(base=unit_square, edges=frozenset({(0, 2), (0, 1), (2, 3)})))


def test_trusted_sets_reject_edges_through_a_vertex():
    s = PointSet.from_coords([(0, 0), (1, 0), (2, 0)], trusted=True)
    assert not is_plane(PlaneGraph(base=s, edges=frozenset({(0, 2)})))


@pytest.mark.parametrize(
    "edges, expected",
    [
        ({(0, 1), (1, 2), (2, 3)}, {GraphClass.SPANNING_TREE, GraphClass.SPANNING_PATH, MaxDegree(k=2)}),
        ({(0, 1), (0, 2), (0, 3)}, {GraphClass.SPANNING_TREE, MaxDegree(k=3)}),
        ({(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)}, {GraphClass.TRIANGULATION, MaxDegree(k=3)}),
        ({(0, 1), (2, 3)}, {MaxDegree(k=1)}),
    ],
)
def test_classify(unit_square: PointSet, edges, expected):
    assert classify(PlaneGraph(base=unit_square, edges=frozenset(edges))) == expected


def test_classify_triangulation_with_interior_point(square_with_inner: PointSet):
    edges = {(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)}
    g = PlaneGraph(base=square_with_inner, edges=frozenset(edges))
    assert GraphClass.TRIANGULATION in classify(g)
    assert is_connected(g)


def test_perfect_matching(unit_square: PointSet):
    assert is_perfect_matching(PlaneGraph(base=unit_square, edges=frozenset({(0, 1), (2, 3)})))
    assert not is_perfect_matching(PlaneGraph(base=unit_square, edges=frozenset({(0, 1), (1, 2)})))


def test_bounds_table_is_ordered():
    assert OPENNESS_BOUNDS["triangulation"] < OPENNESS_BOUNDS["path"] < OPENNESS_BOUNDS["tree3"]
    assert OPENNESS_BOUNDS["tree3"] < OPENNESS_BOUNDS["tree"] < OPENNESS_BOUNDS["matching"]
