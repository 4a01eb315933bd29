"""Incident angles, openness, planarity and class predicates of plane straight-line graphs."""
import logging
import math
from typing import Sequence

from opsg.core.config import settings
from opsg.core.geometry import (
    TAU,
    convex_hull,
    edges_conflict,
    interior_angle,
    orientation,
    on_segment,
)
from opsg.entities.schemas import (
    GraphClass,
    MaxDegree,
    OpennessReport,
    Orientation,
    PlaneGraph,
    Point,
)

logger = logging.getLogger(__name__)

# Guaranteed openness per construction, keyed by command-line class name.
OPENNESS_BOUNDS: dict[str, float] = {
    "triangulation": 2 * math.pi / 3,
    "tree": 5 * math.pi / 3,
    "tree3": 3 * math.pi / 2,
    "tree4": 3 * math.pi / 2,
    "path-convex": 3 * math.pi / 2,
    "path": 5 * math.pi / 4,
    "matching": 2 * math.pi,
}


def angles_around(pts: Sequence[Point], v: int, nbrs: Sequence[int]) -> list[float]:
    if len(nbrs) <= 1:
        return [TAU]
    p = pts[v]
    thetas = sorted(math.atan2(pts[u].y - p.y, pts[u].x - p.x) for u in nbrs)
    gaps = [b - a for a, b in zip(thetas, thetas[1:])]
    gaps.append(thetas[0] + TAU - thetas[-1])
    return gaps


def incident_angles(g: PlaneGraph, v: int) -> list[float]:
    """Counterclockwise gaps between radially consecutive edges at v.

    Args:
        g: The graph
        v: Vertex index

    Returns:
        Gaps starting from the radially smallest edge; [2*pi] for degree <= 1
    """
    nbrs = [j if i == v else i for i, j in g.edges if v in (i, j)]
    return angles_around(g.base.points, v, nbrs)


def openness(g: PlaneGraph) -> OpennessReport:
    """Maximum incident angle of every vertex and their minimum."""
    adj = g.adjacency()
    pts = g.base.points
    per_vertex = [(v, max(angles_around(pts, v, adj[v]))) for v in range(g.n)]
    return OpennessReport(per_vertex=per_vertex, graph_openness=min(a for _, a in per_vertex))


def pointed_vertices(g: PlaneGraph) -> list[int]:
    """Vertices with an incident angle larger than pi."""
    return [v for v, a in openness(g).per_vertex if a > math.pi + settings.EPS]


def is_plane(g: PlaneGraph) -> bool:
    """No two edges meet except at shared endpoints.

    Edges are swept by their x-extent so only overlapping spans are tested.
    For trusted point sets, edges passing through a third vertex are also
    rejected.
    """
    pts = g.base.points
    edges = sorted(
        g.edges, key=lambda e: min(pts[e[0]].x, pts[e[1]].x)
    )
    spans = [(min(pts[i].x, pts[j].x), max(pts[i].x, pts[j].x)) for i, j in edges]
    for a in range(len(edges)):
        hi = spans[a][1]
        for b in range(a + 1, len(edges)):
            if spans[b][0] > hi:
                break
            if edges_conflict(pts, edges[a], edges[b]):
                logger.debug(f"Edges {edges[a]} and {edges[b]} conflict")
                return False

    if g.base.trusted:
        for i, j in edges:
            for k in range(g.n):
                if k not in (i, j) and orientation(pts[i], pts[j], pts[k]) == Orientation.COLLINEAR and on_segment(pts[i], pts[j], pts[k]):
                    return False
    return True


def is_connected(g: PlaneGraph) -> bool:
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def classify(g: PlaneGraph) -> frozenset[GraphClass | MaxDegree]:
    """Class tags of a plane graph.

    SpanningTree: connected with n - 1 edges. SpanningPath: spanning tree
    with maximum degree <= 2. Triangulation: 3n - 3 - h edges including all
    hull edges. MaxDegree(k) is always reported. A vertex of degree 0 rules
    out every spanning class.

    Args:
        g: A plane graph

    Returns:
        Set of class tags
    """
    degrees = g.degrees()
    tags: set[GraphClass | MaxDegree] = {MaxDegree(k=max(degrees))}
    n, m = g.n, len(g.edges)

    if min(degrees) >= 1 and m == n - 1 and is_connected(g):
        tags.add(GraphClass.SPANNING_TREE)
        if max(degrees) <= 2:
            tags.add(GraphClass.SPANNING_PATH)

    if n >= 3:
        hull = convex_hull(g.base)
        h = len(hull)
        hull_edges = {(min(hull[k], hull[(k + 1) % h]), max(hull[k], hull[(k + 1) % h])) for k in range(h)}
        if m == 3 * n - 3 - h and hull_edges <= g.edges:
            tags.add(GraphClass.TRIANGULATION)
    return frozenset(tags)


def is_perfect_matching(g: PlaneGraph) -> bool:
    return all(d == 1 for d in g.degrees())


def path_smaller_angles(pts: Sequence[Point], order: Sequence[int]) -> list[float]:
    """Angle in [0, pi] at every interior vertex of a path given by its vertex order."""
    return [interior_angle(pts[a], pts[b], pts[c]) for a, b, c in zip(order, order[1:], order[2:])]


def path_openness(pts: Sequence[Point], order: Sequence[int]) -> float:
    """Openness of a path: 2*pi minus its largest interior smaller angle."""
    angles = path_smaller_angles(pts, order)
    return TAU - max(angles) if angles else TAU
