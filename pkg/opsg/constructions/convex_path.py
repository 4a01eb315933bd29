"""3*pi/2-open spanning paths of point sets in convex position.

Two routes lead to such a path: enumerating the zigzag paths (alternating
between both tangents of the remaining points) and keeping a qualifying
one, or growing a path outward from a segment that does not expand in
the chosen direction.
"""
import logging
import math

from opsg.core.config import settings
from opsg.core.exceptions import (
    ConstructionInvariantViolated,
    DegenerateInput,
    NotConvexPosition,
    PreconditionViolated,
)
from opsg.core.geometry import convex_hull, diameter, interior_angle, orientation
from opsg.core.graph import classify, is_plane, path_openness, path_smaller_angles
from opsg.entities.schemas import (
    ConstructionTrace,
    GraphClass,
    HalfPlaneSide,
    Orientation,
    PlaneGraph,
    Point,
    PointSet,
    Turn,
    ZigzagPath,
)

logger = logging.getLogger(__name__)

BOUND = 3 * math.pi / 2
RIGHT_ANGLE = math.pi / 2


def convex_order(s: PointSet) -> list[int]:
    """Counterclockwise hull order of a set in convex position.

    Raises:
        NotConvexPosition: If some point is not a hull vertex
    """
    hull = convex_hull(s)
    if len(hull) != s.n:
        inner = sorted(set(range(s.n)) - set(hull))
        raise NotConvexPosition(f"points {inner[:5]} are not hull vertices")
    return hull


def _require_points(s: PointSet, minimum: int = 2) -> None:
    if s.n < minimum:
        raise DegenerateInput(f"spanning path needs at least {minimum} points, got {s.n}")


def half_plane_arc(hull: list[int], p: int, r: int, side: HalfPlaneSide) -> list[int]:
    """Hull vertices on the closed side `side` of the directed line p->r.

    The arc reads [p, q, ..., s, r] for "-" and [r, s, ..., q, p] for "+",
    where q and s are the hull neighbours of p and r on that side.
    """
    pos = {v: k for k, v in enumerate(hull)}
    first, last = (r, p) if side is HalfPlaneSide.PLUS else (p, r)
    h = len(hull)
    arc = [first]
    k = pos[first]
    while hull[k] != last:
        k = (k + 1) % h
        arc.append(hull[k])
    return arc


def _inner(arc: list[int], side: HalfPlaneSide) -> list[int]:
    # arc without p and r, read from the neighbour of p to the neighbour of r
    inner = arc[1:-1]
    return inner[::-1] if side is HalfPlaneSide.PLUS else inner


def is_expanding(s: PointSet, p: int, r: int, side: HalfPlaneSide) -> bool:
    """Whether the rays q->p and s->r meet strictly outside the closed half-plane `side` of p->r.

    Sides with at most three points never expand.

    Raises:
        NotConvexPosition: If s is not in convex position
    """
    hull = convex_order(s)
    if p == r:
        raise PreconditionViolated("segment endpoints must differ")
    arc = half_plane_arc(hull, p, r, side)
    if len(arc) <= 3:
        return False
    inner = _inner(arc, side)
    pp, pr, pq, ps = s[p], s[r], s[inner[0]], s[inner[-1]]

    d1 = (pp.x - pq.x, pp.y - pq.y)
    d2 = (pr.x - ps.x, pr.y - ps.y)
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) <= settings.EPS * math.hypot(*d1) * math.hypot(*d2):
        return False
    w = (pr.x - pp.x, pr.y - pp.y)
    t = (w[0] * d2[1] - w[1] * d2[0]) / denom
    u = (w[0] * d1[1] - w[1] * d1[0]) / denom
    if t < 0 or u < 0:
        return False
    meet = Point(x=pp.x + t * d1[0], y=pp.y + t * d1[1])
    outside = Orientation.CLOCKWISE if side is HalfPlaneSide.PLUS else Orientation.COUNTERCLOCKWISE
    return orientation(pp, pr, meet) == outside


def claim_rays_path(
    s: PointSet, p: int, r: int, side: HalfPlaneSide, trace: ConstructionTrace | None = None
) -> list[int]:
    """Spanning path of the side `side` of p->r that starts with <p, r>.

    At every step q and s are the unvisited neighbours of the current
    segment (p, r). If the angle qsr is at least pi/2 the path continues
    r, q, s on the same side; otherwise it continues r, s, q and the side
    flips.

    Args:
        s: Point set in convex position
        p: First vertex
        r: Second vertex
        side: Half-plane of p->r to span
        trace: Optional trace receiving one step per case

    Returns:
        Vertex order starting with p, r; every smaller angle is at most pi/2

    Raises:
        PreconditionViolated: If (p, r) expands towards `side` or some point
            of the side would close a wide angle at r
    """
    hull = convex_order(s)
    if p == r or not (0 <= p < s.n and 0 <= r < s.n):
        raise PreconditionViolated(f"invalid segment ({p}, {r})")
    arc = half_plane_arc(hull, p, r, side)
    inner = _inner(arc, side)
    if is_expanding(s, p, r, side):
        raise PreconditionViolated(f"segment ({p}, {r}) expands in direction {side.value}")
    for t in inner:
        if interior_angle(s[t], s[r], s[p]) > RIGHT_ANGLE + settings.EPS:
            raise PreconditionViolated(f"point {t} makes a wide angle at {r} with ({p}, {r})")

    path = [p, r]
    while inner:
        if len(inner) == 1:
            path.append(inner[0])
            break
        cp, cr = path[-2], path[-1]
        q, t = inner[0], inner[-1]
        angle = interior_angle(s[q], s[t], s[cr])
        if angle >= RIGHT_ANGLE:
            path += [q, t]
            inner = inner[1:-1]
            if trace is not None:
                trace.record("claim_case", case=1, p=cp, r=cr, q=q, s=t, side=side.value, angle_qsr=angle)
        else:
            path += [t, q]
            inner = inner[1:-1][::-1]
            side = side.flipped()
            if trace is not None:
                angle_sum = (
                    interior_angle(s[t], s[cr], s[cp])
                    + interior_angle(s[cr], s[cp], s[q])
                    + interior_angle(s[cp], s[q], s[t])
                    + angle
                )
                trace.record(
                    "claim_case", case=2, p=cp, r=cr, q=q, s=t, side=side.value, angle_qsr=angle, angle_sum=angle_sum
                )

    wide = [a for a in path_smaller_angles(s.points, path) if a > RIGHT_ANGLE + settings.EPS]
    if wide:
        raise ConstructionInvariantViolated(f"path from ({p}, {r}) has smaller angle {max(wide):.12f} > pi/2")
    return path


def _verified(s: PointSet, order: list[int], what: str) -> PlaneGraph:
    g = PlaneGraph.from_path(s, order)
    value = path_openness(s.points, order)
    if GraphClass.SPANNING_PATH not in classify(g) or not is_plane(g) or value < BOUND - settings.EPS:
        logger.error(f"{what} check failed: openness={value}")
        raise ConstructionInvariantViolated(f"{what} check failed (openness {value:.12f})")
    return g


# ---------------------------------------------------------
# Zigzag paths
# ---------------------------------------------------------
def _zigzag(hull: list[int], i: int, first_turn: Turn) -> list[int]:
    rest = hull[i + 1 :] + hull[:i]
    order = [hull[i]]
    take_first = first_turn is Turn.RIGHT
    while rest:
        order.append(rest.pop(0) if take_first else rest.pop())
        take_first = not take_first
    return order


def all_zigzag_paths(s: PointSet) -> list[ZigzagPath]:
    """Every undirected zigzag path of a convex set, smaller endpoint first.

    Turn.RIGHT steps to the counterclockwise hull successor of the current
    point, Turn.LEFT to its predecessor.

    Raises:
        NotConvexPosition: If s is not in convex position
    """
    _require_points(s)
    hull = convex_order(s)
    succ = {hull[k]: hull[(k + 1) % len(hull)] for k in range(len(hull))}
    seen: dict[tuple[int, ...], ZigzagPath] = {}
    for i in range(len(hull)):
        for turn in (Turn.RIGHT, Turn.LEFT):
            order = _zigzag(hull, i, turn)
            if order[0] > order[-1]:
                order = order[::-1]
            key = tuple(order)
            if key in seen:
                continue
            first = Turn.RIGHT if succ[order[0]] == order[1] else Turn.LEFT
            seen[key] = ZigzagPath(order=key, start=order[0], first_turn=first)
    return [seen[k] for k in sorted(seen)]


def best_zigzag(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """First 3*pi/2-open zigzag path in lexicographic vertex order.

    Over all zigzag paths together at most n - 2 smaller angles exceed
    pi/2, so at least two of them qualify.

    Raises:
        NotConvexPosition: If s is not in convex position
        ConstructionInvariantViolated: If the counting bound fails
    """
    paths = all_zigzag_paths(s)
    trace = ConstructionTrace(construction="zigzag")
    wide = 0
    qualifying = []
    for z in paths:
        angles = path_smaller_angles(s.points, z.order)
        wide += sum(a > RIGHT_ANGLE + settings.EPS for a in angles)
        if path_openness(s.points, z.order) >= BOUND - settings.EPS:
            qualifying.append(z)
    trace.record("zigzag_count", paths=len(paths), wide_angles=wide, qualifying=len(qualifying))

    if wide > max(s.n - 2, 0) or len(qualifying) < min(2, len(paths)):
        raise ConstructionInvariantViolated(
            f"{wide} wide angles and {len(qualifying)} qualifying zigzag paths on {s.n} points"
        )
    choice = qualifying[0]
    trace.record("zigzag", order=list(choice.order), first_turn=choice.first_turn.value)
    return _verified(s, list(choice.order), "zigzag path"), trace


# ---------------------------------------------------------
# Paths grown from a segment
# ---------------------------------------------------------
def _join(s: PointSet, a: int, b: int, side_ab: HalfPlaneSide, side_ba: HalfPlaneSide, trace: ConstructionTrace) -> list[int]:
    # both halves share the segment (a, b); the first one is reversed in front
    first = claim_rays_path(s, a, b, side_ab, trace)
    second = claim_rays_path(s, b, a, side_ba, trace)
    return first[::-1] + second[2:]


def open_convex_path(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """3*pi/2-open spanning path grown from both sides of a diametrical segment.

    Raises:
        NotConvexPosition: If s is not in convex position
        DegenerateInput: If n < 2
    """
    _require_points(s)
    convex_order(s)
    trace = ConstructionTrace(construction="convex_path")
    p, r = diameter(s)
    trace.record("diameter", p=p, r=r)
    order = _join(s, r, p, HalfPlaneSide.PLUS, HalfPlaneSide.PLUS, trace)
    g = _verified(s, order, "convex path")
    logger.info(f"Convex path on {s.n} points, openness {path_openness(s.points, order):.6f}")
    return g, trace


def _small_path_from(s: PointSet, p: int) -> list[int]:
    others = [i for i in range(s.n) if i != p]
    if len(others) < 2:
        return [p] + others
    a, b = others
    # the middle vertex takes the smaller triangle angle
    if interior_angle(s[p], s[a], s[b]) <= interior_angle(s[p], s[b], s[a]):
        return [p, a, b]
    return [p, b, a]


def path_from_endpoint(s: PointSet, p: int) -> tuple[PlaneGraph, ConstructionTrace]:
    """3*pi/2-open spanning path of a convex set with p as an endpoint.

    Walks the chords (p_i, p_(n-i)) that run across the hull opposite p,
    stops at the first one that does not expand away from p, and grows
    the path from that chord in both directions so that p comes last on
    its side.

    Args:
        s: Point set in convex position
        p: Required endpoint

    Raises:
        NotConvexPosition: If s is not in convex position
        DegenerateInput: If n < 2 or p is not a point of s
    """
    _require_points(s)
    if not 0 <= p < s.n:
        raise DegenerateInput(f"point {p} out of range for {s.n} points")
    hull = convex_order(s)
    trace = ConstructionTrace(construction="convex_path_from")
    n = s.n

    if n <= 3:
        order = _small_path_from(s, p)
        trace.record("small", order=order)
        return _verified(s, order, "convex path"), trace

    k0 = hull.index(p)
    ring = hull[k0:] + hull[:k0]
    k = next(
        (i for i in range(1, (n - 1) // 2 + 1) if not is_expanding(s, ring[i], ring[n - i], HalfPlaneSide.MINUS)),
        None,
    )
    if k is None:
        raise ConstructionInvariantViolated(f"no non-expanding chord opposite {p}")
    a, b = ring[k], ring[n - k]
    far = set(ring[k + 1 : n - k])
    near = set(ring[n - k + 1 :] + ring[:k])
    q = next((t for t in sorted(far) if interior_angle(s[a], s[b], s[t]) > RIGHT_ANGLE), None)
    w = next((t for t in sorted(near) if interior_angle(s[b], s[a], s[t]) > RIGHT_ANGLE), None)
    trace.record("chord", k=k, a=a, b=b, witness_q=q, witness_s=w)

    # (+,+) keeps the near side on a->b; (-,-) keeps it on b->a
    plus = (a, b, HalfPlaneSide.PLUS, HalfPlaneSide.PLUS)
    minus = (b, a, HalfPlaneSide.MINUS, HalfPlaneSide.MINUS)
    options = [plus, minus] if q is not None or w is not None else [minus, plus]
    for x, y, side_xy, side_yx in options:
        try:
            order = _join(s, x, y, side_xy, side_yx, trace)
        except PreconditionViolated as e:
            logger.debug(f"Chord ({x}, {y}) with {side_xy.value}{side_yx.value} rejected: {e}")
            continue
        if order[0] != p:
            order = order[::-1]
        if order[0] != p:
            continue
        trace.record("join", first=x, second=y, sides=side_xy.value + side_yx.value)
        return _verified(s, order, "convex path"), trace
    raise ConstructionInvariantViolated(f"no path from {p} could be grown from chord ({a}, {b})")
