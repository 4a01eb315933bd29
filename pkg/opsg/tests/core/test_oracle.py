"""Tests for the exhaustive oracles."""
import math

import pytest

from opsg.constructions.general_path import counterexample_interior_start, open_path
from opsg.constructions.spanning_tree import open_spanning_tree
from opsg.constructions.triangulation import open_triangulation
from opsg.core.config import settings
from opsg.core.exceptions import OracleTooLarge
from opsg.core.generators import barycenter_family, near_collinear_family, random_general, three_wedge_family
from opsg.core.graph import classify, openness
from opsg.core.oracle import (
    max_openness_paths,
    max_openness_trees,
    max_openness_triangulations,
    sweep_path_conjecture,
)
from opsg.entities.schemas import GraphClass, PointSet


# Paths
def test_square_best_path_is_a_zigzag(unit_square: PointSet):
    result = max_openness_paths(unit_square)
    assert result.graph_class is GraphClass.SPANNING_PATH
    assert result.max_openness == pytest.approx(7 * math.pi / 4)
    assert result.count_enumerated == 8
    assert result.witness is not None
    assert result.witness.sorted_edges() == [(0, 1), (0, 2), (2, 3)]


def test_path_constraints_are_respected(square_with_inner: PointSet):
    result = max_openness_paths(square_with_inner, endpoint_constraint=4, edge_constraint=(2, 1))
    assert result.witness is not None
    g = result.witness
    assert GraphClass.SPANNING_PATH in classify(g)
    assert g.degrees()[4] == 1
    assert (1, 2) in g.edges


def test_interior_start_loses_openness(octagon_with_center: PointSet):
    result = counterexample_interior_start(octagon_with_center, 8)
    assert result.max_openness < 3 * math.pi / 2 - 0.05


def test_sweep_reports_the_worst_set(small_random_sets: list[PointSet]):
    sets = [s for s in small_random_sets if s.n <= 7]
    worst = sweep_path_conjecture(sets)
    assert worst.max_openness >= 5 * math.pi / 4 - 1e-9
    assert worst.max_openness == min(max_openness_paths(s).max_openness for s in sets)


def test_sweep_needs_a_set():
    with pytest.raises(ValueError):
        sweep_path_conjecture([])


# Trees
def test_square_best_tree(unit_square: PointSet):
    result = max_openness_trees(unit_square)
    assert result.max_openness == pytest.approx(7 * math.pi / 4)
    assert result.witness is not None
    assert GraphClass.SPANNING_TREE in classify(result.witness)


def test_degree_bound_limits_trees(square_with_inner: PointSet):
    unbounded = max_openness_trees(square_with_inner)
    paths_only = max_openness_trees(square_with_inner, max_degree=2)
    assert paths_only.max_degree == 2
    assert paths_only.count_enumerated < unbounded.count_enumerated
    assert paths_only.max_openness <= unbounded.max_openness + 1e-12
    assert paths_only.max_openness == pytest.approx(max_openness_paths(square_with_inner).max_openness)


def test_single_point_tree_is_fully_open():
    s = PointSet.from_coords([(0, 0)])
    assert max_openness_trees(s).max_openness == pytest.approx(2 * math.pi)


# Triangulations
@pytest.mark.parametrize("fixture, count", [("unit_square", 2), ("regular_hexagon", 14)])
def test_convex_triangulation_counts_are_catalan(request, fixture, count):
    s = request.getfixturevalue(fixture)
    assert max_openness_triangulations(s).count_enumerated == count


def test_square_triangulation_witness(unit_square: PointSet):
    result = max_openness_triangulations(unit_square)
    assert result.max_openness == pytest.approx(3 * math.pi / 2)
    assert result.witness is not None
    assert result.witness.sorted_edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]


def test_triangulations_with_interior_point(square_with_inner: PointSet):
    result = max_openness_triangulations(square_with_inner)
    # a four-star, or one diagonal with the inner point in the triangle below it
    assert result.count_enumerated == 3
    assert result.witness is not None
    assert GraphClass.TRIANGULATION in classify(result.witness)


def test_too_few_points_for_a_triangulation():
    result = max_openness_triangulations(PointSet.from_coords([(0, 0), (1, 0)]))
    assert result.witness is None
    assert result.max_openness == 0.0


# Caps
def test_cap_is_enforced(unit_square: PointSet):
    with pytest.raises(OracleTooLarge) as exc:
        max_openness_paths(unit_square, max_n=3)
    assert exc.value.exit_code == 3
    with pytest.raises(OracleTooLarge):
        max_openness_trees(random_general(settings.ORACLE_MAX_TREE_N + 1, seed=3))


def test_requested_cap_never_raises_the_configured_one():
    s = random_general(settings.ORACLE_MAX_PATH_N + 1, seed=4)
    with pytest.raises(OracleTooLarge):
        max_openness_paths(s, max_n=50)


# Agreement with the constructions
@pytest.mark.parametrize("seed", range(6))
def test_oracle_dominates_constructions(seed):
    s = random_general(6 + seed % 2, seed=seed)
    tri, _ = open_triangulation(s)
    tree, _ = open_spanning_tree(s)
    path, _ = open_path(s)
    assert max_openness_triangulations(s).max_openness >= openness(tri).graph_openness - 1e-9
    assert max_openness_trees(s).max_openness >= openness(tree).graph_openness - 1e-9
    assert max_openness_paths(s).max_openness >= openness(path).graph_openness - 1e-9


# Lower-bound families
@pytest.mark.parametrize("eps", [0.1, 0.05, 0.01])
def test_barycenter_family_triangulations_stay_near_bound(eps):
    result = max_openness_triangulations(barycenter_family(7, eps))
    assert result.max_openness <= 2 * math.pi / 3 + 0.5


def test_barycenter_family_bound_tightens_with_eps():
    values = [max_openness_triangulations(barycenter_family(7, eps)).max_openness for eps in (0.1, 0.05, 0.01)]
    assert values[-1] < 2 * math.pi / 3 + 0.1
    assert values[-1] <= values[0] + 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("eps", [0.1, 0.01])
def test_barycenter_family_ten_points(monkeypatch, eps):
    monkeypatch.setattr(settings, "ORACLE_MAX_TRIANGULATION_N", 10)
    result = max_openness_triangulations(barycenter_family(10, eps))
    assert result.max_openness <= 2 * math.pi / 3 + 0.5


def test_three_wedge_family_tree_bound():
    result = max_openness_trees(three_wedge_family(6, 0.01))
    assert result.max_openness <= 5 * math.pi / 3 + 0.1


def test_near_collinear_family_degree_four_tree_bound():
    result = max_openness_trees(near_collinear_family(6, 0.01), max_degree=4)
    assert result.max_openness <= 3 * math.pi / 2 + 0.1
