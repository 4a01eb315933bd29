"""3*pi/2-open spanning trees of maximum degree four and three.

Every point set handed down the recursion is owned by a vertex that can be
joined to any of its members without losing a free angle of 3*pi/2. The
set's diameter (c, d) is hung from the owner and the remainder is split
between c and d (and, for degree three, two tangency points).
"""
import logging
import math
from typing import Literal, Sequence

from opsg.core.config import settings
from opsg.core.exceptions import ConstructionInvariantViolated, DegenerateInput
from opsg.core.geometry import diameter, interior_angle, orientation, tangents_from_point
from opsg.core.graph import angles_around, classify, is_plane, openness
from opsg.entities.schemas import (
    Assignment,
    ConstructionTrace,
    GraphClass,
    Orientation,
    PlaneGraph,
    PointSet,
)

logger = logging.getLogger(__name__)

BOUND = 3 * math.pi / 2


class _TreeBuilder:
    """Edge accumulator that checks the owner's free angle on every attach."""

    def __init__(self, s: PointSet, trace: ConstructionTrace) -> None:
        self.s = s
        self.trace = trace
        self.adj: list[list[int]] = [[] for _ in range(s.n)]
        self.edges: set[tuple[int, int]] = set()
        self.sets_assigned = [0] * s.n

    def _max_gap(self, v: int) -> float:
        return max(angles_around(self.s.points, v, self.adj[v]))

    def connect(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))
        self.adj[u].append(v)
        self.adj[v].append(u)
        for w in (u, v):
            if self._max_gap(w) < BOUND - settings.EPS:
                logger.error(f"Attaching ({u}, {v}) closed the free angle at {w}")
                raise ConstructionInvariantViolated(f"vertex {w} lost its 3pi/2 angle when attaching ({u}, {v})")

    def assign(self, owner: int, members: Sequence[int], work: list[tuple[int, list[int]]]) -> None:
        if not members:
            return
        self.sets_assigned[owner] += 1
        self.trace.record(
            "assign",
            **Assignment(owner=owner, members=frozenset(members)).model_dump(mode="json", exclude={"wedge"}),
        )
        work.append((owner, list(members)))


def _side(s: PointSet, x: int, y: int, p: int) -> Orientation:
    return orientation(s[x], s[y], s[p])


def _hang(builder: _TreeBuilder, owner: int, members: list[int], degree: int, work: list[tuple[int, list[int]]]) -> None:
    s = builder.s
    if len(members) == 1:
        builder.connect(owner, members[0])
        return

    c, d = diameter(s, members)
    if interior_angle(s[d], s[c], s[owner]) >= math.pi / 2:
        c, d = d, c
    angle_dco = interior_angle(s[d], s[c], s[owner])
    builder.trace.record("diameter", owner=owner, c=c, d=d, angle_dca=angle_dco)

    owner_side = _side(s, d, c, owner)
    rest = [p for p in members if p not in (c, d)]
    s_d = [p for p in rest if _side(s, d, c, p) != owner_side]
    s_c = [p for p in rest if _side(s, d, c, p) == owner_side]
    c_side = _side(s, owner, c, d)
    s_c_plus = [p for p in s_c if _side(s, owner, c, p) == c_side]
    s_c_minus = [p for p in s_c if _side(s, owner, c, p) != c_side]

    builder.connect(c, d)
    builder.assign(d, s_d, work)

    if degree == 4 or not s_c_plus or not s_c_minus:
        builder.connect(owner, c)
        if degree == 4:
            builder.assign(c, s_c_plus, work)
            builder.assign(c, s_c_minus, work)
        else:
            builder.assign(c, s_c, work)
        return

    # tangency points p (farther along owner->c) and q replace the edge owner-c
    left, right = tangents_from_point(s[owner], s, s_c)
    o, pc = s[owner], s[c]
    w = (pc.x - o.x, pc.y - o.y)

    def reach(i: int) -> float:
        return (s[i].x - o.x) * w[0] + (s[i].y - o.y) * w[1]

    p, q = (left, right) if reach(left) > reach(right) else (right, left)
    builder.trace.record("tangent_split", owner=owner, p=p, q=q, c=c)
    builder.connect(owner, p)
    builder.connect(p, q)
    builder.connect(q, c)

    near_side = _side(s, p, q, owner)
    p_side = _side(s, q, c, p)
    to_p, to_q, to_c = [], [], []
    for x in s_c:
        if x in (p, q):
            continue
        if _side(s, p, q, x) == near_side:
            to_p.append(x)
        elif _side(s, q, c, x) == p_side:
            to_q.append(x)
        else:
            to_c.append(x)
    builder.assign(p, to_p, work)
    builder.assign(q, to_q, work)
    builder.assign(c, to_c, work)


def _open_tree(s: PointSet, degree: Literal[3, 4]) -> tuple[PlaneGraph, ConstructionTrace]:
    if s.n < 2:
        raise DegenerateInput(f"spanning tree needs at least 2 points, got {s.n}")
    trace = ConstructionTrace(construction=f"tree_deg{degree}")
    builder = _TreeBuilder(s, trace)

    a, b = diameter(s)
    builder.connect(a, b)
    rest = [i for i in range(s.n) if i not in (a, b)]
    work: list[tuple[int, list[int]]] = []
    builder.assign(a, [i for i in rest if _side(s, a, b, i) == Orientation.COUNTERCLOCKWISE], work)
    builder.assign(b, [i for i in rest if _side(s, a, b, i) == Orientation.CLOCKWISE], work)

    while work:
        owner, members = work.pop()
        _hang(builder, owner, members, degree, work)

    limit = 2 if degree == 4 else 1
    crowded = [v for v, k in enumerate(builder.sets_assigned) if k > limit]
    if crowded:
        raise ConstructionInvariantViolated(f"vertices {crowded} own more than {limit} sets")

    g = PlaneGraph(base=s, edges=frozenset(builder.edges))
    value = openness(g).graph_openness
    if (
        GraphClass.SPANNING_TREE not in classify(g)
        or not is_plane(g)
        or max(g.degrees()) > degree
        or value < BOUND - settings.EPS
    ):
        logger.error(f"Degree-{degree} tree check failed: openness={value}, max degree={max(g.degrees())}")
        raise ConstructionInvariantViolated(f"degree-{degree} tree check failed (openness {value:.12f})")
    logger.info(f"Degree-{degree} tree on {s.n} points, openness {value:.6f}")
    return g, trace


def open_tree_deg4(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """3*pi/2-open plane spanning tree with maximum degree four.

    Raises:
        DegenerateInput: If n < 2
        ConstructionInvariantViolated: If the result fails its own check
    """
    return _open_tree(s, 4)


def open_tree_deg3(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """3*pi/2-open plane spanning tree with maximum degree three.

    Wherever the degree-four construction would hand two sets to c, the
    edge from the owner to c is replaced by a path through the tangency
    points of the owner to those sets.

    Raises:
        DegenerateInput: If n < 2
        ConstructionInvariantViolated: If the result fails its own check
    """
    return _open_tree(s, 3)
