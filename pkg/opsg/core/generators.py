"""Seeded point-set factories, including the families on which the openness bounds are tight."""
import logging
import math

import numpy as np

from opsg.core.config import settings
from opsg.core.exceptions import BadShape, DegenerateInput
from opsg.core.geometry import convex_hull
from opsg.entities.schemas import PointSet

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 100

# Corners of the unit equilateral triangle, counterclockwise.
TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])


def _resolve_seed(seed: int | None) -> int:
    return settings.seed() if seed is None else seed


def _unit_disc(rng: np.random.Generator, k: int) -> np.ndarray:
    r = np.sqrt(rng.uniform(0.0, 1.0, k))
    t = rng.uniform(0.0, 2.0 * math.pi, k)
    return np.column_stack([r * np.cos(t), r * np.sin(t)])


def _point_set(xy: np.ndarray) -> PointSet:
    return PointSet.from_coords(xy.tolist())


def barycenter_family(n: int, eps: float, seed: int | None = None) -> PointSet:
    """Three clusters at the corners of a unit equilateral triangle plus its barycenter.

    Every cluster holds (n - 1) / 3 points displaced from the corner by eps
    times a fixed seeded offset in the unit disc, so the family scales
    linearly in eps. One-point clusters sit exactly on the corner.

    Args:
        n: Number of points, n >= 4 and n = 1 (mod 3)
        eps: Cluster radius
        seed: Offset seed (default from settings)

    Returns:
        A general-position point set; the barycenter is the last point

    Raises:
        BadShape: If n or eps is out of range
    """
    if n < 4 or n % 3 != 1:
        raise BadShape(f"barycenter family needs n >= 4 and n = 1 (mod 3), got {n}")
    if eps <= 0:
        raise BadShape(f"eps must be positive, got {eps}")
    k = (n - 1) // 3
    center = TRIANGLE.mean(axis=0)
    base_seed = _resolve_seed(seed)

    for attempt in range(MAX_ATTEMPTS):
        rng = np.random.default_rng(base_seed + attempt)
        clusters = []
        for corner in TRIANGLE:
            offsets = np.zeros((1, 2)) if k == 1 else _unit_disc(rng, k)
            clusters.append(corner + eps * offsets)
        xy = np.vstack(clusters + [center[None, :]])
        try:
            return _point_set(xy)
        except DegenerateInput:
            logger.debug(f"barycenter_family attempt {attempt} degenerate, resampling")
    raise BadShape(f"could not place barycenter family n={n} eps={eps} in general position")


def three_wedge_family(n: int, eps: float) -> PointSet:
    """Three clusters of n / 3 points, one per corner of a unit equilateral triangle.

    Cluster i leaves corner C_i along the side towards C_(i+1) on a slightly
    convex arc of length eps, so every connection between clusters meets the
    others at angles close to pi/3.

    Args:
        n: Number of points, n >= 3 and n = 0 (mod 3)
        eps: Angular spread of each cluster

    Raises:
        BadShape: If n or eps is out of range
    """
    if n < 3 or n % 3 != 0:
        raise BadShape(f"three-wedge family needs n >= 3 and n = 0 (mod 3), got {n}")
    if eps <= 0:
        raise BadShape(f"eps must be positive, got {eps}")
    k = n // 3
    rows = []
    for i in range(3):
        c = TRIANGLE[i]
        u = TRIANGLE[(i + 1) % 3] - c
        u = u / np.linalg.norm(u)
        perp = np.array([-u[1], u[0]])
        for j in range(k):
            s = 0.0 if k == 1 else eps * j / (k - 1)
            rows.append(c + s * u + 0.5 * s * s * perp)
    return _point_set(np.array(rows))


def near_collinear_family(n: int, eps: float) -> PointSet:
    """n - 1 points on a flat unit-length arc plus one far point.

    Arc points are x_j = j / (n - 2), y_j = 4 * eps * x_j * (1 - x_j); the
    far point is (0.5, -100) and comes last.

    Raises:
        BadShape: If n < 3 or eps <= 0
    """
    if n < 3:
        raise BadShape(f"near-collinear family needs n >= 3, got {n}")
    if eps <= 0:
        raise BadShape(f"eps must be positive, got {eps}")
    x = np.linspace(0.0, 1.0, n - 1)
    arc = np.column_stack([x, 4.0 * eps * x * (1.0 - x)])
    return _point_set(np.vstack([arc, [[0.5, -100.0]]]))


def regular_ngon_plus_center(n: int) -> PointSet:
    """Unit-circumradius regular n-gon with an extra point at its center (last index).

    For even n the polygon is rotated by pi / (3n) and the center moved by
    1e-6 along a direction halfway between two diameters.

    Raises:
        BadShape: If n < 3
    """
    if n < 3:
        raise BadShape(f"regular polygon needs n >= 3, got {n}")
    rot = 0.0 if n % 2 else math.pi / (3 * n)
    t = rot + 2.0 * math.pi * np.arange(n) / n
    ring = np.column_stack([np.cos(t), np.sin(t)])
    center = np.zeros(2)
    if n % 2 == 0:
        phi = rot + math.pi / n
        center = 1e-6 * np.array([math.cos(phi), math.sin(phi)])
    return _point_set(np.vstack([ring, center[None, :]]))


def random_general(n: int, seed: int | None = None) -> PointSet:
    """n uniform points in the unit square, resampled until in general position."""
    if n < 1:
        raise BadShape(f"need at least one point, got {n}")
    rng = np.random.default_rng(_resolve_seed(seed))
    for attempt in range(MAX_ATTEMPTS):
        try:
            return _point_set(rng.uniform(0.0, 1.0, (n, 2)))
        except DegenerateInput:
            logger.debug(f"random_general attempt {attempt} degenerate, resampling")
    raise BadShape(f"could not sample {n} points in general position")


def random_convex(n: int, seed: int | None = None) -> PointSet:
    """n points at random angles on the unit circle, resampled until every point is a hull vertex."""
    if n < 1:
        raise BadShape(f"need at least one point, got {n}")
    rng = np.random.default_rng(_resolve_seed(seed))
    for attempt in range(MAX_ATTEMPTS):
        t = rng.uniform(0.0, 2.0 * math.pi, n)
        try:
            s = _point_set(np.column_stack([np.cos(t), np.sin(t)]))
        except DegenerateInput:
            continue
        if len(convex_hull(s)) == n:
            return s
        logger.debug(f"random_convex attempt {attempt} not in convex position, resampling")
    raise BadShape(f"could not sample {n} points in convex position")


FAMILIES = {
    "barycenter": barycenter_family,
    "three-wedge": three_wedge_family,
    "near-collinear": near_collinear_family,
    "ngon-center": regular_ngon_plus_center,
    "random": random_general,
    "random-convex": random_convex,
}
