"""Test configuration and fixtures."""
import logging
import math
import os

import pytest

os.environ["ENV_STATE"] = "test"

from opsg.core.generators import random_convex, random_general, regular_ngon_plus_center  # noqa: E402
from opsg.entities.schemas import PointSet  # noqa: E402

logger = logging.getLogger(__name__)


# ------------------------------------------
# Point sets
# ------------------------------------------


@pytest.fixture()
def unit_square() -> PointSet:
    """Corners of the unit square, counterclockwise from the origin."""
    return PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture()
def square_with_inner() -> PointSet:
    """Unit square plus one interior point off both diagonals (index 4)."""
    return PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1), (0.4, 0.3)])


@pytest.fixture()
def regular_hexagon() -> PointSet:
    """Regular hexagon with circumradius 1, counterclockwise from (1, 0)."""
    return PointSet.from_coords(
        [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]
    )


@pytest.fixture()
def octagon_with_center() -> PointSet:
    """Regular octagon with a nearly central point as index 8."""
    return regular_ngon_plus_center(8)


@pytest.fixture()
def small_random_sets() -> list[PointSet]:
    """Seeded general-position sets with 4 to 12 points."""
    return [random_general(n, seed=1000 + n) for n in range(4, 13)]


@pytest.fixture()
def small_convex_sets() -> list[PointSet]:
    """Seeded convex-position sets with 4 to 12 points."""
    return [random_convex(n, seed=2000 + n) for n in range(4, 13)]


# ------------------------------------------
# Files
# ------------------------------------------


@pytest.fixture()
def points_file(tmp_path, square_with_inner: PointSet):
    """Point file holding `square_with_inner`."""
    from opsg.libs.io import write_points

    path = tmp_path / "points.txt"
    write_points(square_with_inner, path)
    return path
