"""Triangulations in which every vertex keeps an incident angle of at least 2*pi/3."""
import logging
import math

from opsg.core.config import settings
from opsg.core.exceptions import ConstructionInvariantViolated, DegenerateInput, PreconditionViolated
from opsg.core.geometry import convex_hull, interior_angle, signed_area2, strictly_inside_triangle
from opsg.core.graph import classify, is_plane, openness
from opsg.entities.schemas import (
    ConstructionTrace,
    GraphClass,
    PlaneGraph,
    PointSet,
    TriangleSubproblem,
)

logger = logging.getLogger(__name__)

BOUND = 2 * math.pi / 3


def _closest_to_line(s: PointSet, u: int, v: int, candidates: tuple[int, ...]) -> int:
    pu, pv = s[u], s[v]
    return min(candidates, key=lambda i: (abs(signed_area2(pu, pv, s[i])), s[i].x, s[i].y, i))


def _partition(s: PointSet, corners: tuple[int, int, int], pool: list[int]) -> tuple[tuple[int, ...], list[int]]:
    a, b, c = (s[i] for i in corners)
    inside = tuple(i for i in pool if strictly_inside_triangle(s[i], a, b, c))
    taken = set(inside)
    return inside, [i for i in pool if i not in taken]


def split_triangle(
    t: TriangleSubproblem, s: PointSet
) -> tuple[int, list[tuple[int, int]], list[TriangleSubproblem], dict]:
    """Split a triangle at the candidate apex with the widest angle.

    For each side the interior point nearest its line spans an empty triangle
    with that side. The three angles those points subtend sum to at least
    2*pi, so the widest one is at least 2*pi/3; it is kept as a face.

    Args:
        t: Triangle (ccw corners) with a non-empty interior
        s: Point set

    Returns:
        (apex, new edges, child subproblems, decision details)

    Raises:
        PreconditionViolated: If the triangle has no interior point
        ConstructionInvariantViolated: If the widest angle is below 2*pi/3
    """
    if not t.interior:
        raise PreconditionViolated("split_triangle needs a non-empty interior")
    a, b, c = t.corners

    # rotation k puts the corner opposite the candidate first
    rotations = [(a, b, c), (b, c, a), (c, a, b)]
    candidates = []
    for x, y, z in rotations:
        apex = _closest_to_line(s, y, z, t.interior)
        candidates.append((interior_angle(s[y], s[apex], s[z]), apex, (x, y, z)))

    angle_sum = sum(angle for angle, _, _ in candidates)
    best_angle, apex, (x, y, z) = max(
        candidates, key=lambda item: (item[0], -s[item[1]].x, -s[item[1]].y, -item[1])
    )
    if best_angle < BOUND - settings.EPS:
        raise ConstructionInvariantViolated(
            f"widest apex angle {best_angle:.12f} below 2pi/3 in triangle {t.corners}"
        )

    pool = [i for i in t.interior if i != apex]
    first, pool = _partition(s, (x, y, apex), pool)
    second, pool = _partition(s, (x, apex, z), pool)
    if pool:
        raise ConstructionInvariantViolated(f"points {pool} fell into the empty face at {apex}")

    children = [
        TriangleSubproblem(corners=(x, y, apex), interior=first),
        TriangleSubproblem(corners=(x, apex, z), interior=second),
    ]
    new_edges = [(apex, x), (apex, y), (apex, z)]
    detail = {
        "corners": list(t.corners),
        "apex": apex,
        "angle": best_angle,
        "candidates": [(apx, ang) for ang, apx, _ in candidates],
        "angle_sum": angle_sum,
    }
    return apex, new_edges, children, detail


def open_triangulation(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """Triangulation of s that is 2*pi/3-open.

    The hull is fan-triangulated from its first vertex; every fan triangle is
    then split recursively with `split_triangle`.

    Args:
        s: Point set with at least three points

    Returns:
        The triangulation and the trace of apex choices

    Raises:
        DegenerateInput: If n < 3
        ConstructionInvariantViolated: If the result fails its own check
    """
    if s.n < 3:
        raise DegenerateInput(f"triangulation needs at least 3 points, got {s.n}")
    trace = ConstructionTrace(construction="triangulation")
    hull = convex_hull(s)
    h = len(hull)
    root = hull[0]

    edges: set[tuple[int, int]] = {(hull[k], hull[(k + 1) % h]) for k in range(h)}
    edges.update((root, hull[k]) for k in range(2, h - 1))
    trace.record("hull_fan", root=root, hull_size=h)

    on_hull = set(hull)
    pool = [i for i in range(s.n) if i not in on_hull]
    stack: list[TriangleSubproblem] = []
    for k in range(1, h - 1):
        corners = (root, hull[k], hull[k + 1])
        inside, pool = _partition(s, corners, pool)
        stack.append(TriangleSubproblem(corners=corners, interior=inside))
    if pool:
        raise ConstructionInvariantViolated(f"points {pool} not inside any fan triangle")

    while stack:
        t = stack.pop()
        if not t.interior:
            continue
        apex, new_edges, children, detail = split_triangle(t, s)
        logger.debug(f"Split {t.corners} at {apex} with angle {detail['angle']:.6f}")
        trace.record("split", **detail)
        edges.update(new_edges)
        stack.extend(children)

    g = PlaneGraph(base=s, edges=frozenset(edges))
    value = openness(g).graph_openness
    if GraphClass.TRIANGULATION not in classify(g) or not is_plane(g) or value < BOUND - settings.EPS:
        logger.error(f"Triangulation check failed: openness={value}")
        raise ConstructionInvariantViolated(f"triangulation check failed (openness {value:.12f})")
    logger.info(f"Triangulated {s.n} points, openness {value:.6f}")
    return g, trace
