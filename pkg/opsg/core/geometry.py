"""Robust planar primitives: orientation, angles, hulls, diameters, slabs, cones and tangents.

Sign decisions go through `orientation`, which is exact for every pair of
doubles. Angle values are plain floats and are compared with EPS.
"""
import logging
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from opsg.core.config import settings
from opsg.core.exceptions import DegenerateAngle, PointNotExterior
from opsg.entities.schemas import Orientation, Point, PointSet

logger = logging.getLogger(__name__)

TAU = 2.0 * math.pi
EPS = settings.EPS

# Static filter bound for the 2x2 determinant, (3 + 16u) * u with u = 2^-53.
_U = 2.0**-53
_CCW_ERRBOUND = (3.0 + 16.0 * _U) * _U

Points = PointSet | Sequence[Point]


def _points(s: Points) -> Sequence[Point]:
    return s.points if isinstance(s, PointSet) else s


# ---------------------------------------------------------
# Predicates
# ---------------------------------------------------------
def orientation(a: Point, b: Point, c: Point) -> Orientation:
    """Exact sign of the signed area of triangle (a, b, c).

    A floating-point evaluation is accepted when it clears the static error
    bound; otherwise the determinant is recomputed with rationals.

    Args:
        a: First vertex
        b: Second vertex
        c: Third vertex

    Returns:
        COUNTERCLOCKWISE, CLOCKWISE or COLLINEAR
    """
    detleft = (b.x - a.x) * (c.y - a.y)
    detright = (b.y - a.y) * (c.x - a.x)
    det = detleft - detright
    errbound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if det > errbound:
        return Orientation.COUNTERCLOCKWISE
    if -det > errbound:
        return Orientation.CLOCKWISE

    ax, ay = Fraction(a.x), Fraction(a.y)
    exact = (Fraction(b.x) - ax) * (Fraction(c.y) - ay) - (Fraction(b.y) - ay) * (Fraction(c.x) - ax)
    if exact > 0:
        return Orientation.COUNTERCLOCKWISE
    if exact < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def signed_area2(a: Point, b: Point, c: Point) -> float:
    """Twice the signed area of (a, b, c), floating point."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def strictly_inside_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    o1 = orientation(a, b, p)
    o2 = orientation(b, c, p)
    o3 = orientation(c, a, p)
    return o1 == o2 == o3 != Orientation.COLLINEAR


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """Bounding-box test for a point already known to be collinear with ab."""
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == Orientation.COLLINEAR and on_segment(a, b, c):
        return True
    if o2 == Orientation.COLLINEAR and on_segment(a, b, d):
        return True
    if o3 == Orientation.COLLINEAR and on_segment(c, d, a):
        return True
    if o4 == Orientation.COLLINEAR and on_segment(c, d, b):
        return True
    return False


def segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool:
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def edges_conflict(pts: Sequence[Point], e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Two straight-line edges over `pts` meet somewhere other than a shared endpoint."""
    shared = set(e) & set(f)
    if len(shared) == 2:
        return True
    if shared:
        (s,) = shared
        u = e[0] if e[1] == s else e[1]
        v = f[0] if f[1] == s else f[1]
        if orientation(pts[s], pts[u], pts[v]) != Orientation.COLLINEAR:
            return False
        # collinear edges sharing an endpoint overlap iff they point the same way
        return (pts[u].x - pts[s].x) * (pts[v].x - pts[s].x) + (pts[u].y - pts[s].y) * (
            pts[v].y - pts[s].y
        ) > 0
    return segments_intersect(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]])


# ---------------------------------------------------------
# Angles
# ---------------------------------------------------------
def ccw_angle(a: Point, b: Point, c: Point) -> float:
    """Counterclockwise angle at b taking ray b->a onto ray b->c.

    Args:
        a: Point on the first ray
        b: Apex
        c: Point on the second ray

    Returns:
        Angle in [0, 2*pi)

    Raises:
        DegenerateAngle: If a or c coincides with b
    """
    ux, uy = a.x - b.x, a.y - b.y
    vx, vy = c.x - b.x, c.y - b.y
    if (ux == 0.0 and uy == 0.0) or (vx == 0.0 and vy == 0.0):
        raise DegenerateAngle(f"zero-length ray at ({b.x}, {b.y})")
    return ccw_vector_angle((ux, uy), (vx, vy))


def ccw_vector_angle(u: tuple[float, float], v: tuple[float, float]) -> float:
    """Counterclockwise rotation in [0, 2*pi) taking direction u onto direction v."""
    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    theta = math.atan2(cross, dot)
    if theta < 0.0:
        theta += TAU
    return 0.0 if theta >= TAU else theta


def interior_angle(a: Point, b: Point, c: Point) -> float:
    """Unsigned angle at b between rays b->a and b->c, in [0, pi].

    Raises:
        DegenerateAngle: If a or c coincides with b
    """
    ux, uy = a.x - b.x, a.y - b.y
    vx, vy = c.x - b.x, c.y - b.y
    if (ux == 0.0 and uy == 0.0) or (vx == 0.0 and vy == 0.0):
        raise DegenerateAngle(f"zero-length ray at ({b.x}, {b.y})")
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


def vector_angle(u: tuple[float, float], v: tuple[float, float]) -> float:
    """Unsigned angle between two direction vectors, in [0, pi]."""
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])


def direction(a: Point, b: Point) -> tuple[float, float]:
    return (b.x - a.x, b.y - a.y)


# ---------------------------------------------------------
# Hull and diameter
# ---------------------------------------------------------
def convex_hull(s: Points, indices: Sequence[int] | None = None) -> list[int]:
    """Convex hull by the monotone chain scan.

    Args:
        s: Point set or point sequence
        indices: Restrict to these indices (default all)

    Returns:
        Hull vertex indices in counterclockwise order, starting at the
        lexicographically smallest point
    """
    pts = _points(s)
    idx = sorted(range(len(pts)) if indices is None else indices, key=lambda i: (pts[i].x, pts[i].y, i))
    if len(idx) <= 2:
        return list(idx)

    lower: list[int] = []
    for i in idx:
        while len(lower) > 1 and orientation(pts[lower[-2]], pts[lower[-1]], pts[i]) != Orientation.COUNTERCLOCKWISE:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(idx):
        while len(upper) > 1 and orientation(pts[upper[-2]], pts[upper[-1]], pts[i]) != Orientation.COUNTERCLOCKWISE:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def diameter(s: Points, indices: Sequence[int] | None = None) -> tuple[int, int]:
    """Pair of points at maximum distance.

    Candidates are hull vertices only. Exact distance ties go to the
    lexicographically smallest index pair; the returned pair is ordered so
    the first point has the smaller x (then smaller y).

    Args:
        s: Point set or point sequence
        indices: Restrict to these indices (default all)

    Returns:
        The diametrical index pair

    Raises:
        ValueError: If fewer than two points are given
    """
    pts = _points(s)
    hull = convex_hull(pts, indices)
    if len(hull) < 2:
        raise ValueError("diameter needs at least two points")

    hull_sorted = sorted(hull)
    xy = np.array([[pts[i].x, pts[i].y] for i in hull_sorted])
    d2 = ((xy[:, None, :] - xy[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, -1.0)
    # argmax scans row-major over sorted indices, so the first hit is the smallest pair
    flat = int(np.argmax(d2))
    r, c = divmod(flat, len(hull_sorted))
    i, j = hull_sorted[min(r, c)], hull_sorted[max(r, c)]
    if (pts[j].x, pts[j].y) < (pts[i].x, pts[i].y):
        i, j = j, i
    return i, j


def find_collinear_triple(s: Points) -> tuple[int, int, int] | None:
    """Search for three collinear points.

    For every point the directions to all others are sorted modulo pi and
    near-equal neighbours are confirmed with the exact predicate.

    Returns:
        A collinear index triple, or None when the set is in general position
    """
    pts = _points(s)
    n = len(pts)
    if n < 3:
        return None
    xy = np.array([[p.x, p.y] for p in pts])
    tol = 1e-9
    for i in range(n):
        others = np.delete(np.arange(n), i)
        d = xy[others] - xy[i]
        ang = np.mod(np.arctan2(d[:, 1], d[:, 0]), math.pi)
        order = np.argsort(ang, kind="stable")
        ang_sorted = ang[order]
        close = np.diff(ang_sorted) < tol

        runs: list[list[int]] = []
        current = [0]
        for k, c in enumerate(close, start=1):
            if c:
                current.append(k)
            else:
                if len(current) > 1:
                    runs.append(current)
                current = [k]
        if len(current) > 1:
            runs.append(current)
        if len(ang_sorted) > 1 and ang_sorted[0] + math.pi - ang_sorted[-1] < tol:
            runs.append([len(ang_sorted) - 1, 0])

        for run in runs:
            members = [int(others[order[k]]) for k in run]
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    j, k = members[a], members[b]
                    if orientation(pts[i], pts[j], pts[k]) == Orientation.COLLINEAR:
                        return tuple(sorted((i, j, k)))  # type: ignore[return-value]
    return None


# ---------------------------------------------------------
# Slabs, cones, tangents
# ---------------------------------------------------------
def in_orthogonal_slab(p: Point, q: Point, r: Point) -> bool:
    """The projection of r onto line pq falls strictly between p and q."""
    ux, uy = q.x - p.x, q.y - p.y
    return (r.x - p.x) * ux + (r.y - p.y) * uy > 0 and (r.x - q.x) * -ux + (r.y - q.y) * -uy > 0


def in_direction_cone(apex: Point, start: tuple[float, float], end: tuple[float, float], r: Point) -> bool:
    """r lies in the closed cone swept counterclockwise from direction `start` to `end`."""
    v = (r.x - apex.x, r.y - apex.y)
    if v == (0.0, 0.0):
        raise DegenerateAngle("point coincides with cone apex")
    theta = ccw_vector_angle(start, v)
    if theta > TAU - EPS:
        theta = 0.0
    return theta <= ccw_vector_angle(start, end) + EPS


def in_cone(apex: Point, ray1_to: Point, ray2_to: Point, r: Point) -> bool:
    """r lies in the closed cone swept counterclockwise from ray apex->ray1_to to apex->ray2_to.

    Raises:
        DegenerateAngle: If any of the points coincides with the apex
    """
    if ray1_to.key() == apex.key() or ray2_to.key() == apex.key():
        raise DegenerateAngle("cone ray of zero length")
    return in_direction_cone(apex, direction(apex, ray1_to), direction(apex, ray2_to), r)


def tangents_from_point(p: Point, s: Points, indices: Sequence[int] | None = None) -> tuple[int, int]:
    """Tangency points from an exterior point to the hull of s.

    Args:
        p: Point strictly outside the hull
        s: Point set or point sequence
        indices: Restrict to these indices (default all)

    Returns:
        (left, right): every point is on or right of p->left and on or left
        of p->right; collinear ties go to the point nearer p

    Raises:
        PointNotExterior: If p is inside or on the hull
    """
    pts = _points(s)
    hull = convex_hull(pts, indices)
    if not hull:
        raise ValueError("tangents need at least one point")
    if len(hull) == 1:
        if pts[hull[0]].key() == p.key():
            raise PointNotExterior("point coincides with the single hull point")
        return hull[0], hull[0]
    if len(hull) == 2:
        u, v = pts[hull[0]], pts[hull[1]]
        if orientation(u, v, p) == Orientation.COLLINEAR and on_segment(u, v, p):
            raise PointNotExterior("point lies on the hull segment")
    else:
        m = len(hull)
        if all(
            orientation(pts[hull[k]], pts[hull[(k + 1) % m]], p) != Orientation.CLOCKWISE
            for k in range(m)
        ):
            raise PointNotExterior(f"point ({p.x}, {p.y}) is not outside the hull")

    def nearer(a: int, b: int) -> bool:
        return (pts[a].x - p.x) ** 2 + (pts[a].y - p.y) ** 2 < (pts[b].x - p.x) ** 2 + (pts[b].y - p.y) ** 2

    left = right = hull[0]
    for w in hull[1:]:
        o = orientation(p, pts[left], pts[w])
        if o == Orientation.COUNTERCLOCKWISE or (o == Orientation.COLLINEAR and nearer(w, left)):
            left = w
        o = orientation(p, pts[right], pts[w])
        if o == Orientation.CLOCKWISE or (o == Orientation.COLLINEAR and nearer(w, right)):
            right = w
    return left, right


def point_in_convex_polygon(p: Point, pts: Sequence[Point], hull: Sequence[int]) -> bool:
    """p lies inside or on a counterclockwise convex polygon."""
    m = len(hull)
    if m < 3:
        return False
    return all(orientation(pts[hull[k]], pts[hull[(k + 1) % m]], p) != Orientation.CLOCKWISE for k in range(m))


def segment_avoids_hull_interior(a: Point, b: Point, pts: Sequence[Point], hull: Sequence[int]) -> bool:
    """Segment ab does not enter the interior of a counterclockwise convex polygon.

    Separating-axis test with the segment's own line and the polygon edges.
    Polygons with fewer than three vertices have no interior.
    """
    m = len(hull)
    if m < 3:
        return True
    # Some polygon edge line has the whole segment on its outer closed side
    for k in range(m):
        u, v = pts[hull[k]], pts[hull[(k + 1) % m]]
        if orientation(u, v, a) != Orientation.COUNTERCLOCKWISE and orientation(u, v, b) != Orientation.COUNTERCLOCKWISE:
            return True
    # Or the segment line has every polygon vertex on one closed side
    sides = {orientation(a, b, pts[h]) for h in hull}
    return not (Orientation.COUNTERCLOCKWISE in sides and Orientation.CLOCKWISE in sides)
