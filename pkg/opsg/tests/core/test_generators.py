"""Tests for the seeded point-set families."""
import math

import pytest

from opsg.core.exceptions import BadShape
from opsg.core.generators import (
    FAMILIES,
    barycenter_family,
    near_collinear_family,
    random_convex,
    random_general,
    regular_ngon_plus_center,
    three_wedge_family,
)
from opsg.core.geometry import convex_hull


def test_barycenter_family_ends_with_the_barycenter():
    s = barycenter_family(10, 0.05)
    assert s.n == 10
    assert s[9].x == pytest.approx(0.5)
    assert s[9].y == pytest.approx(math.sqrt(3) / 6)


def test_barycenter_family_single_point_clusters_sit_on_corners():
    s = barycenter_family(4, 0.1)
    assert s.coords()[:3] == [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)]


def test_three_wedge_family_clusters_start_at_corners():
    s = three_wedge_family(9, 0.01)
    assert s.n == 9
    assert s.coords()[0] == pytest.approx((0, 0))
    assert s.coords()[3] == pytest.approx((1, 0))
    assert all(math.dist(s.coords()[3 * i], s.coords()[3 * i + 2]) <= 0.0101 for i in range(3))


def test_near_collinear_family_far_point_is_last():
    s = near_collinear_family(6, 0.01)
    assert s.coords()[-1] == (0.5, -100.0)
    assert max(y for _, y in s.coords()[:-1]) <= 0.01 + 1e-12


def test_ngon_plus_center():
    s = regular_ngon_plus_center(8)
    assert s.n == 9
    assert math.hypot(*s.coords()[8]) < 1e-5
    assert len(convex_hull(s)) == 8


@pytest.mark.parametrize(
    "call",
    [
        lambda: barycenter_family(6, 0.1),
        lambda: barycenter_family(7, 0.0),
        lambda: three_wedge_family(7, 0.1),
        lambda: near_collinear_family(2, 0.1),
        lambda: regular_ngon_plus_center(2),
        lambda: random_general(0),
    ],
)
def test_bad_parameters_raise(call):
    with pytest.raises(BadShape) as exc:
        call()
    assert exc.value.exit_code == 2


def test_random_sets_are_reproducible():
    assert random_general(15, seed=7) == random_general(15, seed=7)
    assert random_general(15, seed=7) != random_general(15, seed=8)


def test_seed_comes_from_environment(monkeypatch):
    monkeypatch.setenv("OPSG_SEED", "42")
    assert random_general(8) == random_general(8, seed=42)


def test_random_convex_is_in_convex_position():
    s = random_convex(12, seed=5)
    assert len(convex_hull(s)) == 12


def test_family_registry():
    assert set(FAMILIES) == {"barycenter", "three-wedge", "near-collinear", "ngon-center", "random", "random-convex"}
