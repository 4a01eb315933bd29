"""Tests for the 3*pi/2-open spanning trees of bounded degree."""
import pytest
from hypothesis import given, settings

from opsg.constructions.bounded_tree import BOUND, open_tree_deg3, open_tree_deg4
from opsg.core.exceptions import DegenerateInput
from opsg.core.generators import near_collinear_family, random_general
from opsg.core.graph import classify, is_plane, openness
from opsg.entities.schemas import GraphClass, PointSet
from opsg.tests.strategies import general_sets

BUILDERS = [(open_tree_deg3, 3), (open_tree_deg4, 4)]


@pytest.mark.parametrize("build, degree", BUILDERS)
def test_square_with_inner(square_with_inner: PointSet, build, degree):
    g, trace = build(square_with_inner)
    assert GraphClass.SPANNING_TREE in classify(g)
    assert max(g.degrees()) <= degree
    assert openness(g).graph_openness >= BOUND - 1e-9
    assert trace.construction == f"tree_deg{degree}"
    assert (0, 2) in g.edges


@pytest.mark.parametrize("build, degree", BUILDERS)
def test_two_points(build, degree):
    g, trace = build(PointSet.from_coords([(0, 0), (1, 2)]))
    assert g.sorted_edges() == [(0, 1)]
    assert "assign" not in trace.kinds()


@pytest.mark.parametrize("build, degree", BUILDERS)
def test_one_point_is_rejected(build, degree):
    with pytest.raises(DegenerateInput):
        build(PointSet.from_coords([(3, 4)]))


def test_assignments_name_owner_and_members(square_with_inner: PointSet):
    _, trace = open_tree_deg4(square_with_inner)
    assigned = [step.detail for step in trace.steps if step.kind == "assign"]
    assert assigned
    assert all(set(d) == {"owner", "members"} for d in assigned)
    owners = [d["owner"] for d in assigned]
    assert all(owners.count(v) <= 2 for v in owners)


@pytest.mark.parametrize("build, degree", BUILDERS)
def test_near_collinear_family(build, degree):
    g, _ = build(near_collinear_family(12, 0.01))
    assert max(g.degrees()) <= degree
    assert openness(g).graph_openness >= BOUND - 1e-9


@settings(max_examples=40, deadline=None)
@given(general_sets(min_n=3, max_n=40))
def test_bounded_trees_are_open(s: PointSet):
    for build, degree in BUILDERS:
        g, _ = build(s)
        assert GraphClass.SPANNING_TREE in classify(g)
        assert is_plane(g)
        assert max(g.degrees()) <= degree
        assert openness(g).graph_openness >= BOUND - 1e-9


@pytest.mark.slow
def test_bounded_tree_sweep():
    for seed in range(500):
        s = random_general(4 + seed % 57, seed=seed)
        for build, degree in BUILDERS:
            g, _ = build(s)
            assert max(g.degrees()) <= degree
            assert openness(g).graph_openness >= BOUND - 1e-9
