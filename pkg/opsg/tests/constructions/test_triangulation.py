"""Tests for the 2*pi/3-open triangulation."""
import math

import pytest
from hypothesis import given, settings

from opsg.constructions.triangulation import BOUND, open_triangulation, split_triangle
from opsg.core.exceptions import ConstructionInvariantViolated, DegenerateInput, PreconditionViolated
from opsg.core.generators import random_general
from opsg.core.graph import classify, is_plane, openness
from opsg.entities.schemas import GraphClass, PointSet, TriangleSubproblem
from opsg.tests.strategies import general_sets


def test_single_triangle():
    s = PointSet.from_coords([(0, 0), (1, 0), (0, 1)])
    g, trace = open_triangulation(s)
    assert g.sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    assert trace.kinds() == ["hull_fan"]


def test_square_with_inner_point(square_with_inner: PointSet):
    g, trace = open_triangulation(square_with_inner)
    assert len(g.edges) == 8
    assert GraphClass.TRIANGULATION in classify(g)
    assert openness(g).graph_openness >= BOUND - 1e-9
    assert trace.kinds().count("split") == 1


def test_split_records_the_widest_apex(square_with_inner: PointSet):
    apex, new_edges, children, detail = split_triangle(TriangleSubproblem(corners=(0, 1, 2), interior=(4,)), square_with_inner)
    assert apex == 4
    assert {frozenset(e) for e in new_edges} == {frozenset((4, 0)), frozenset((4, 1)), frozenset((4, 2))}
    assert all(not child.interior for child in children)
    assert detail["angle"] >= 2 * math.pi / 3
    assert detail["angle_sum"] >= 2 * math.pi - 1e-9


def test_split_needs_an_interior_point(unit_square: PointSet):
    with pytest.raises(PreconditionViolated):
        split_triangle(TriangleSubproblem(corners=(0, 1, 2)), unit_square)


def test_too_few_points():
    with pytest.raises(DegenerateInput):
        open_triangulation(PointSet.from_coords([(0, 0), (1, 1)]))


def test_failed_self_check_raises(mocker, square_with_inner: PointSet):
    mocker.patch("opsg.constructions.triangulation.is_plane", return_value=False)
    with pytest.raises(ConstructionInvariantViolated) as exc:
        open_triangulation(square_with_inner)
    assert exc.value.exit_code == 1


@settings(max_examples=40, deadline=None)
@given(general_sets(min_n=3, max_n=40))
def test_triangulations_are_open(s: PointSet):
    g, _ = open_triangulation(s)
    assert GraphClass.TRIANGULATION in classify(g)
    assert is_plane(g)
    assert openness(g).graph_openness >= BOUND - 1e-9


@pytest.mark.slow
def test_triangulation_sweep():
    for seed in range(500):
        s = random_general(4 + seed % 57, seed=seed)
        g, _ = open_triangulation(s)
        assert openness(g).graph_openness >= BOUND - 1e-9
