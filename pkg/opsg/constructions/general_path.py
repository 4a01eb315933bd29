"""5*pi/4-open spanning paths of point sets in general position.

A path is grown from a hull vertex q (vertex mode) or a hull edge q1q2
(edge mode). Every step peels one or two hull points off the remaining set
and hands a smaller vertex- or edge-mode problem down; the peeled points
are put in front of the sub-path once its first vertices are known. Every
smaller angle of the result is at most 3*pi/4.
"""
import logging
import math
from collections import deque
from typing import Callable, Sequence

from opsg.core.config import settings
from opsg.core.exceptions import (
    ConstructionInvariantViolated,
    DegenerateInput,
    NotHullEdge,
    NotHullVertex,
    PointNotExterior,
)
from opsg.core.geometry import (
    ccw_angle,
    convex_hull,
    in_orthogonal_slab,
    interior_angle,
    orientation,
    point_in_convex_polygon,
    signed_area2,
)
from opsg.core.graph import classify, is_plane, path_openness, path_smaller_angles
from opsg.core.oracle import max_openness_paths
from opsg.entities.schemas import (
    ConeLocation,
    ConstructionTrace,
    GraphClass,
    OracleResult,
    Orientation,
    PathState,
    PlaneGraph,
    Point,
    PointSet,
)

logger = logging.getLogger(__name__)

BOUND = 5 * math.pi / 4
SMALLER_ANGLE = 3 * math.pi / 4

Finish = Callable[[deque[int]], None]


def _dot(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)


def outer_normal_cone_locate(q: Point, pts: Sequence[Point], hull: Sequence[int]) -> ConeLocation:
    """Locate an exterior point among the outer normal cones of a convex polygon.

    The cone of vertex v is bounded by the outward perpendiculars of its two
    hull edges. Cones are closed; a point on a cone ray is reported in the
    cone with on_boundary set.

    Args:
        q: Point strictly outside the polygon
        pts: Point sequence
        hull: Polygon vertices in counterclockwise order

    Returns:
        in_cone (p,) or between (y, z) with y -> z a counterclockwise hull edge

    Raises:
        PointNotExterior: If q is inside or on the polygon
    """
    h = len(hull)
    if h >= 3 and point_in_convex_polygon(q, pts, hull):
        raise PointNotExterior(f"({q.x}, {q.y}) is not outside the polygon")
    if any(pts[v].key() == q.key() for v in hull):
        raise PointNotExterior(f"({q.x}, {q.y}) is a polygon vertex")
    if h == 1:
        return ConeLocation(kind="in_cone", vertices=(hull[0],))

    for k, v in enumerate(hull):
        pv = pts[v]
        nbrs = [pts[hull[(k - 1) % h]], pts[hull[(k + 1) % h]]] if h > 2 else [pts[hull[1 - k]]]
        dots = [_dot(pv, q, u) for u in nbrs]
        if all(d <= 0 for d in dots):
            scale = max(abs(q.x - pv.x) + abs(q.y - pv.y), 1.0)
            boundary = any(abs(d) <= settings.EPS * scale for d in dots)
            return ConeLocation(kind="in_cone", vertices=(v,), on_boundary=boundary)

    for k in range(h if h > 2 else 1):
        y, z = hull[k], hull[(k + 1) % h]
        outside = h == 2 or orientation(pts[y], pts[z], q) == Orientation.CLOCKWISE
        if outside and _dot(pts[y], q, pts[z]) > 0 and _dot(pts[z], q, pts[y]) > 0:
            return ConeLocation(kind="between", vertices=(y, z))
    raise PointNotExterior(f"({q.x}, {q.y}) is in no outer normal cone")


# ---------------------------------------------------------
# Base cases
# ---------------------------------------------------------
def _short_vertex_path(s: PointSet, q: int, rest: list[int]) -> list[int]:
    if len(rest) < 2:
        return [q] + rest
    a, b = rest
    if interior_angle(s[q], s[a], s[b]) <= interior_angle(s[q], s[b], s[a]):
        return [q, a, b]
    return [q, b, a]


def _short_edge_path(s: PointSet, q1: int, q2: int, rest: list[int]) -> list[int]:
    if not rest:
        return [q1, q2]
    (x,) = rest
    if interior_angle(s[q1], s[q2], s[x]) <= interior_angle(s[q2], s[q1], s[x]):
        return [q1, q2, x]
    return [q2, q1, x]


def _require(case: str, holds: bool, detail: str) -> None:
    if not holds:
        logger.error(f"Step {case} broke its geometry: {detail}")
        raise ConstructionInvariantViolated(f"{case}: {detail}")


def _lead_prefix(lead: int, if_lead: tuple[int, int], otherwise: tuple[int, int]) -> Finish:
    def finish(seq: deque[int]) -> None:
        a, b = if_lead if seq[0] == lead else otherwise
        seq.appendleft(b)
        seq.appendleft(a)

    return finish


# ---------------------------------------------------------
# One peeling step per mode
# ---------------------------------------------------------
def _vertex_step(s: PointSet, q: int, members: frozenset[int], trace: ConstructionTrace) -> tuple[Finish, PathState]:
    rest = members - {q}
    hull = convex_hull(s, sorted(rest))
    loc = outer_normal_cone_locate(s[q], s.points, hull)

    if loc.kind == "between":
        y, z = loc.vertices
        trace.record("vertex_between_cones", q=q, y=y, z=z)
        return (lambda seq: seq.appendleft(q)), PathState(remaining=tuple(sorted(rest)), mode="edge", anchor=(y, z))

    (p,) = loc.vertices
    k = hull.index(p)
    y, z = hull[k - 1], hull[(k + 1) % len(hull)]
    qpz = ccw_angle(s[q], s[p], s[z])
    zpy = ccw_angle(s[z], s[p], s[y])
    ypq = ccw_angle(s[y], s[p], s[q])
    angles = {"qpz": qpz, "zpy": zpy, "ypq": ypq, "angle_sum": qpz + zpy + ypq}

    if zpy <= min(qpz, ypq):
        w = z if qpz <= ypq else y
        trace.record("vertex_in_cone_pair", q=q, p=p, w=w, on_boundary=loc.on_boundary, **angles)

        def finish(seq: deque[int]) -> None:
            seq.appendleft(w)
            seq.appendleft(q)

        return finish, PathState(remaining=tuple(sorted(rest - {w})), mode="vertex", anchor=(p,))

    w = y if ypq <= qpz else z
    angle_qwp = interior_angle(s[q], s[w], s[p])
    trace.record("vertex_in_cone_edge", q=q, p=p, w=w, angle_qwp=angle_qwp, on_boundary=loc.on_boundary, **angles)
    eps = settings.EPS
    total = angles["angle_sum"]
    _require("vertex_in_cone_edge", abs(total - 2 * math.pi) <= eps, f"angles around {p} sum to {total:.12f}")
    _require("vertex_in_cone_edge", min(ypq, qpz) < SMALLER_ANGLE + eps, f"smallest angle at {p} is {min(ypq, qpz):.12f}")
    _require("vertex_in_cone_edge", angle_qwp < math.pi / 2 + eps, f"angle at {w} is {angle_qwp:.12f}")
    return (lambda seq: seq.appendleft(q)), PathState(remaining=tuple(sorted(rest)), mode="edge", anchor=(p, w))


def _facing(s: PointSet, u: int, v: int, q1: int, q2: int) -> bool:
    # outward normal of the ccw edge u->v points against the inward normal of q1->q2
    dx, dy = s[v].x - s[u].x, s[v].y - s[u].y
    ex, ey = s[q2].x - s[q1].x, s[q2].y - s[q1].y
    return dy * -ey + -dx * ex < 0


def _edge_step(
    s: PointSet, q1: int, q2: int, members: frozenset[int], trace: ConstructionTrace
) -> tuple[Finish, PathState]:
    hull = convex_hull(s, sorted(members))
    h = len(hull)
    pos = {v: k for k, v in enumerate(hull)}
    if hull[(pos[q1] + 1) % h] != q2:
        q1, q2 = q2, q1
    b, c = hull[pos[q1] - 1], hull[(pos[q2] + 1) % h]
    alpha = interior_angle(s[q2], s[q1], s[b])
    omega = interior_angle(s[q1], s[q2], s[c])

    if min(alpha, omega) < SMALLER_ANGLE:
        first, then = (q2, q1) if alpha <= omega else (q1, q2)
        trace.record("edge_sharp_end", q1=q1, q2=q2, alpha=alpha, omega=omega, first=first)
        return (lambda seq: seq.appendleft(first)), PathState(
            remaining=tuple(sorted(members - {first})), mode="vertex", anchor=(then,)
        )

    rest = members - {q1, q2}
    inner = convex_hull(s, sorted(rest))
    m = len(inner)
    near_edges = [(inner[k], inner[(k + 1) % m]) for k in range(m if m > 2 else 1)]
    if m > 2:
        near_edges = [(u, v) for u, v in near_edges if _facing(s, u, v, q1, q2)]
    near = {v for e in near_edges for v in e}
    in_t = [v for v in near if in_orthogonal_slab(s[q1], s[q2], s[v])]

    if in_t:
        a, bb = s[q1], s[q2]
        p = min(in_t, key=lambda v: (abs(signed_area2(a, bb, s[v])), s[v].x, s[v].y))
        alpha1 = interior_angle(s[q2], s[q1], s[p])
        beta = interior_angle(s[q1], s[q2], s[p])
        gamma2 = interior_angle(s[q1], s[p], s[q2])
        remaining = tuple(sorted(rest))

        if gamma2 > math.pi / 2:
            trace.record("edge_slab_obtuse", q1=q1, q2=q2, p=p, alpha1=alpha1, beta=beta, gamma2=gamma2)

            def finish(seq: deque[int]) -> None:
                p1 = seq[1]
                if interior_angle(s[q2], s[p], s[p1]) <= interior_angle(s[q1], s[p], s[p1]):
                    seq.appendleft(q2)
                    seq.appendleft(q1)
                else:
                    seq.appendleft(q1)
                    seq.appendleft(q2)

            return finish, PathState(remaining=remaining, mode="vertex", anchor=(p,))

        k = inner.index(p)
        y, z = inner[k - 1], inner[(k + 1) % m]
        if beta >= alpha1:
            w, finish, ring = y, _lead_prefix(p, (q2, q1), (q1, q2)), [q1, q2, p, y]
        else:
            w, finish, ring = z, _lead_prefix(p, (q1, q2), (q2, q1)), [q1, q2, z, p]
        convex = len({orientation(s[ring[i]], s[ring[(i + 1) % 4]], s[ring[(i + 2) % 4]]) for i in range(4)}) == 1
        trace.record(
            "edge_slab_acute", q1=q1, q2=q2, p=p, w=w, alpha1=alpha1, beta=beta, gamma2=gamma2, convex_quadrilateral=convex
        )
        _require("edge_slab_acute", convex, f"quadrilateral {ring} is not convex")
        return finish, PathState(remaining=remaining, mode="edge", anchor=(p, w))

    def reach(v: int) -> float:
        return _dot(s[q1], s[q2], s[v]) / _dot(s[q1], s[q2], s[q2])

    crossing = [(u, v) for u, v in near_edges if min(reach(u), reach(v)) <= 0 and max(reach(u), reach(v)) >= 1]
    if not crossing:
        raise ConstructionInvariantViolated(f"no hull edge of the rest spans the strip over ({q1}, {q2})")
    u, v = crossing[0]
    y, z = (u, v) if reach(u) < reach(v) else (v, u)
    bounds = {
        "angle_q2q1z": (interior_angle(s[q2], s[q1], s[z]), math.pi / 2),
        "angle_yq2q1": (interior_angle(s[y], s[q2], s[q1]), math.pi / 2),
        "angle_q2yz": (interior_angle(s[q2], s[y], s[z]), SMALLER_ANGLE),
        "angle_yzq1": (interior_angle(s[y], s[z], s[q1]), SMALLER_ANGLE),
    }
    trace.record("edge_strip", q1=q1, q2=q2, y=y, z=z, **{name: value for name, (value, _) in bounds.items()})
    for name, (value, limit) in bounds.items():
        _require("edge_strip", value < limit + settings.EPS, f"{name} is {value:.12f}")
    return _lead_prefix(y, (q1, q2), (q2, q1)), PathState(remaining=tuple(sorted(rest)), mode="edge", anchor=(y, z))


# ---------------------------------------------------------
# Driver
# ---------------------------------------------------------
def _grow(s: PointSet, state: PathState, trace: ConstructionTrace) -> list[int]:
    steps: list[Finish] = []
    while True:
        members = frozenset(state.remaining)
        if state.mode == "vertex":
            (q,) = state.anchor
            if len(members) <= 3:
                seq = deque(_short_vertex_path(s, q, sorted(members - {q})))
                break
            finish, nxt = _vertex_step(s, q, members, trace)
        else:
            q1, q2 = state.anchor
            if len(members) <= 3:
                seq = deque(_short_edge_path(s, q1, q2, sorted(members - {q1, q2})))
                break
            finish, nxt = _edge_step(s, q1, q2, members, trace)
        if len(nxt.remaining) >= len(members):
            raise ConstructionInvariantViolated(f"step from {state.anchor} did not shrink the point set")
        steps.append(finish)
        state = nxt

    for finish in reversed(steps):
        finish(seq)
    order = list(seq)

    wide = [a for a in path_smaller_angles(s.points, order) if a > SMALLER_ANGLE + settings.EPS]
    if wide:
        logger.error(f"Path from {order[0]} has smaller angle {max(wide):.12f}")
        raise ConstructionInvariantViolated(f"smaller angle {max(wide):.12f} exceeds 3pi/4")
    return order


def path_from_vertex(s: PointSet, q: int, trace: ConstructionTrace | None = None) -> list[int]:
    """Spanning path starting at hull vertex q with every smaller angle at most 3*pi/4.

    Raises:
        NotHullVertex: If q is not a hull vertex of s
    """
    if q not in convex_hull(s):
        raise NotHullVertex(f"point {q} is not a hull vertex")
    trace = trace or ConstructionTrace(construction="path_from_vertex")
    return _grow(s, PathState(remaining=tuple(range(s.n)), mode="vertex", anchor=(q,)), trace)


def path_from_edge(s: PointSet, q1: int, q2: int, trace: ConstructionTrace | None = None) -> list[int]:
    """Spanning path that begins with the hull edge q1q2 in one of its two directions.

    Raises:
        NotHullEdge: If q1q2 is not a hull edge of s
    """
    hull = convex_hull(s)
    h = len(hull)
    edges = {frozenset((hull[k], hull[(k + 1) % h])) for k in range(h)} if h > 1 else set()
    if q1 == q2 or frozenset((q1, q2)) not in edges:
        raise NotHullEdge(f"({q1}, {q2}) is not a hull edge")
    trace = trace or ConstructionTrace(construction="path_from_edge")
    return _grow(s, PathState(remaining=tuple(range(s.n)), mode="edge", anchor=(q1, q2)), trace)


def verified_path(s: PointSet, order: list[int], bound: float = BOUND) -> PlaneGraph:
    """Plane spanning path graph for `order`, checked against an openness bound.

    Raises:
        ConstructionInvariantViolated: If the path is not plane, not spanning or too closed
    """
    g = PlaneGraph.from_path(s, order)
    value = path_openness(s.points, order)
    if GraphClass.SPANNING_PATH not in classify(g) or not is_plane(g) or value < bound - settings.EPS:
        logger.error(f"Path check failed: openness={value}")
        raise ConstructionInvariantViolated(f"path check failed (openness {value:.12f})")
    return g


def open_path(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """5*pi/4-open plane spanning path grown from the first hull vertex.

    Raises:
        DegenerateInput: If n < 2
        ConstructionInvariantViolated: If the result fails its own check
    """
    if s.n < 2:
        raise DegenerateInput(f"spanning path needs at least 2 points, got {s.n}")
    trace = ConstructionTrace(construction="path")
    start = convex_hull(s)[0]
    order = path_from_vertex(s, start, trace)
    g = verified_path(s, order)
    logger.info(f"Path on {s.n} points, openness {path_openness(s.points, order):.6f}")
    return g, trace


def path_through_edge(s: PointSet, q1: int, q2: int) -> tuple[PlaneGraph, ConstructionTrace]:
    """5*pi/4-open plane spanning path that uses the hull edge q1q2 at one of its ends."""
    trace = ConstructionTrace(construction="path_edge")
    order = path_from_edge(s, q1, q2, trace)
    return verified_path(s, order), trace


def path_from_hull_vertex(s: PointSet, q: int) -> tuple[PlaneGraph, ConstructionTrace]:
    """5*pi/4-open plane spanning path with the hull vertex q as an endpoint."""
    trace = ConstructionTrace(construction="path_from")
    order = path_from_vertex(s, q, trace)
    return verified_path(s, order), trace


def counterexample_interior_start(s: PointSet, q_interior: int) -> OracleResult:
    """Best openness over all plane spanning paths that end at q_interior.

    Raises:
        OracleTooLarge: If s exceeds the path oracle size cap
    """
    if not 0 <= q_interior < s.n:
        raise DegenerateInput(f"point {q_interior} out of range for {s.n} points")
    return max_openness_paths(s, endpoint_constraint=q_interior)
