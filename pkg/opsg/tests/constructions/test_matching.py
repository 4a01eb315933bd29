"""Tests for plane perfect matchings."""
import math

import pytest
from hypothesis import given, settings

from opsg.constructions.matching import open_perfect_matching
from opsg.core.exceptions import BadShape
from opsg.core.graph import is_perfect_matching, is_plane, openness
from opsg.entities.schemas import PointSet
from opsg.tests.strategies import general_sets


def test_square_pairs_by_x(unit_square: PointSet):
    g, trace = open_perfect_matching(unit_square)
    assert g.sorted_edges() == [(0, 3), (1, 2)]
    assert trace.kinds() == ["pairs"]
    assert openness(g).graph_openness == pytest.approx(2 * math.pi)


def test_odd_sets_are_rejected(square_with_inner: PointSet):
    with pytest.raises(BadShape):
        open_perfect_matching(square_with_inner)


@settings(max_examples=30, deadline=None)
@given(general_sets(min_n=2, max_n=60))
def test_matchings_are_plane(s: PointSet):
    if s.n % 2:
        s = PointSet(points=s.points[:-1])
    g, _ = open_perfect_matching(s)
    assert is_perfect_matching(g)
    assert is_plane(g)
